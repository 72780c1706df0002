"""Class expressions.

Grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := tensor (('*'|'·') tensor)*
    tensor := power (('⊗'|'@') power)*
    power  := atom ('^' INT)?
    atom   := INT ['/' INT] | '(' expr ')' | 'pi^*' atom | token
    token  := 'xi' | 'ξ' | 'f' | 's[' parts ']'
            | 'c{' INT '}(' NAME ['^v'] ')' | 's{' INT '}(' NAME ['^v'] ')'
            | 'schur[' parts '](' NAME ')'

``c{i}(E)`` is a Chern class, ``s{i}(E)`` a Segre class and ``s{i}(E^v)`` a
dual Segre class.  ``s[2,1]`` is a Schubert class; in product rings the
factors of a pure tensor are joined with ``⊗`` (ASCII ``@``).  ``pi^*`` (or
``π*``) marks a pullback and is otherwise transparent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CodimMismatch, ParseError, RingMismatch, UnboundSymbol
from .formal import DUAL, FormalChernPolynomial
from .grassmannian import GrassmannRing, ProductRing, schubert_name
from .projbundle import ProjBundleRing
from .ring import NumericalRing, RingClass
from .schur import Partition, evaluate, jacobi_trudi


# --- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    name: str  # "xi", "f" or a Schubert name such as "s[2,1]"


@dataclass(frozen=True)
class Chern:
    kind: str  # "c" or "s"
    index: int
    bundle: str


@dataclass(frozen=True)
class Schur:
    parts: tuple[int, ...]
    bundle: str


@dataclass(frozen=True)
class Add:
    terms: tuple[tuple[int, object], ...]  # (sign, node)


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Tensor:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Pullback:
    inner: object


# --- lexer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<chern>(?P<ck>[cs])\{(?P<ci>\d+)\}\((?P<cname>[A-Za-z_][A-Za-z0-9_]*)(?P<cdual>\^v)?\))
  | (?P<schur>schur\[(?P<sparts>[0-9,\s]*)\]\((?P<sname>[A-Za-z_][A-Za-z0-9_]*)\))
  | (?P<schub>s\[(?P<bparts>[0-9,\s]*)\])
  | (?P<pull>pi\^\*|π\*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_ξ][A-Za-z0-9_]*)
  | (?P<op>[-+*·^()/⊗@])
    """,
    re.VERBOSE,
)


def _parts(text: str, where: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
        Partition(parts)
    except ValueError as exc:
        raise ParseError(f"bad partition [{text}] in {where!r}: {exc}") from None
    return parts


def tokenize(src: str) -> list[tuple[str, object, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r} at position {pos} in {src!r}")
        text = m.group(0)
        if m.group("ws"):
            pass
        elif m.group("chern"):
            name = m.group("cname") + (DUAL if m.group("cdual") else "")
            out.append(("chern", Chern(m.group("ck"), int(m.group("ci")), name), pos))
        elif m.group("schur"):
            out.append(("node", Schur(_parts(m.group("sparts"), text), m.group("sname")), pos))
        elif m.group("schub"):
            out.append(("node", Gen(schubert_name(Partition(_parts(m.group("bparts"), text)))), pos))
        elif m.group("pull"):
            out.append(("pull", None, pos))
        elif m.group("num"):
            out.append(("num", int(text), pos))
        elif m.group("ident"):
            name = "xi" if text == "ξ" else text
            out.append(("node", Gen(name), pos))
        else:
            op = {"·": "*", "@": "⊗"}.get(text, text)
            out.append(("op", op, pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    def peek(self, kind=None, value=None):
        if self.i >= len(self.toks):
            return None
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            return None
        if value is not None and t[1] != value:
            return None
        return t

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str):
        if self.i < len(self.toks):
            pos = self.toks[self.i][2]
            raise ParseError(f"{msg} at position {pos} in {self.src!r}")
        raise ParseError(f"{msg} at end of {self.src!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        node = self.expr()
        if self.i != len(self.toks):
            self.error("unexpected token")
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.peek("op", "-"):
            self.take()
            sign = -1
        elif self.peek("op", "+"):
            self.take()
        terms.append((sign, self.term()))
        while self.peek("op", "+") or self.peek("op", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def term(self):
        factors = [self.tensor()]
        while self.peek("op", "*"):
            self.take()
            factors.append(self.tensor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def tensor(self):
        factors = [self.power()]
        while self.peek("op", "⊗"):
            self.take()
            factors.append(self.power())
        return factors[0] if len(factors) == 1 else Tensor(tuple(factors))

    def power(self):
        base = self.atom()
        if self.peek("op", "^"):
            self.take()
            t = self.peek("num")
            if t is None:
                self.error("expected an integer exponent")
            self.take()
            return Pow(base, t[1])
        return base

    def atom(self):
        t = self.peek()
        if t is None:
            self.error("unexpected end of expression")
        kind, value, _ = t
        if kind == "num":
            self.take()
            num = Fraction(value)
            if self.peek("op", "/"):
                self.take()
                d = self.peek("num")
                if d is None:
                    self.error("expected an integer denominator")
                self.take()
                if d[1] == 0:
                    self.error("zero denominator")
                num = num / d[1]
            return Num(num)
        if kind == "op" and value == "(":
            self.take()
            node = self.expr()
            if not self.peek("op", ")"):
                self.error("expected ')'")
            self.take()
            return node
        if kind == "pull":
            self.take()
            return Pullback(self.atom())
        if kind in ("node", "chern"):
            self.take()
            return value
        self.error(f"unexpected token {value!r}")


def parse(src: str):
    """Parse an expression into an AST."""
    return _Parser(src).parse()


# --- weight check --------------------------------------------------------


def weight(node) -> int:
    """Homogeneous weight of an expression, with ``xi`` and ``f`` of weight 1.

    Raises :class:`CodimMismatch` when a sum mixes weights.  Unknown plain
    identifiers are an error.
    """
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Num):
        return 0
    if isinstance(node, Gen):
        if node.name in ("xi", "f"):
            return 1
        if node.name == "1":
            return 0
        if node.name.startswith("s["):
            return sum(_parts(node.name[2:-1], node.name))
        raise UnboundSymbol(f"unknown token {node.name!r}")
    if isinstance(node, Chern):
        return node.index
    if isinstance(node, Schur):
        return sum(node.parts)
    if isinstance(node, Pullback):
        return weight(node.inner)
    if isinstance(node, Pow):
        return weight(node.base) * node.exp
    if isinstance(node, (Mul, Tensor)):
        return sum(weight(f) for f in node.factors)
    if isinstance(node, Add):
        ws = [weight(t) for _, t in node.terms]
        if len(set(ws)) > 1:
            raise CodimMismatch(f"sum mixes weights {ws}")
        return ws[0]
    raise TypeError(node)


# --- evaluation ----------------------------------------------------------


def evaluate_expr(node, ring: NumericalRing, bundles=None) -> RingClass:
    """Evaluate an expression (string or AST) to a class in ``ring``."""
    if isinstance(node, str):
        node = parse(node)
    bundles = bundles or {}
    return _eval(node, ring, bundles)


def _eval(node, ring, bundles) -> RingClass:
    if isinstance(node, Num):
        return ring.one() * node.value
    if isinstance(node, Gen):
        return _gen(node.name, ring)
    if isinstance(node, Chern):
        base = node.bundle[: -len(DUAL)] if node.bundle.endswith(DUAL) else node.bundle
        if base not in bundles:
            raise UnboundSymbol(f"unknown bundle {base!r} in {node.kind}{{{node.index}}}({node.bundle})")
        rank = bundles[base].rank
        if node.kind == "c":
            P = FormalChernPolynomial.c(node.index, node.bundle, rank)
        else:
            P = FormalChernPolynomial.s(node.index, node.bundle)
        if P.is_zero():
            return ring.zero(node.index)
        return evaluate(P, bundles, ring)
    if isinstance(node, Schur):
        if node.bundle not in bundles:
            raise UnboundSymbol(f"unknown bundle {node.bundle!r} in schur[...]({node.bundle})")
        E = bundles[node.bundle]
        P = jacobi_trudi(node.parts, E.rank, E.name)
        if P.is_zero():
            return ring.zero(sum(node.parts))
        return evaluate(P, bundles, ring)
    if isinstance(node, Pullback):
        return _eval(node.inner, ring, bundles)
    if isinstance(node, Pow):
        return _eval(node.base, ring, bundles) ** node.exp
    if isinstance(node, Mul):
        out = _eval(node.factors[0], ring, bundles)
        for f in node.factors[1:]:
            out = out * _eval(f, ring, bundles)
        return out
    if isinstance(node, Add):
        out = None
        for sign, t in node.terms:
            v = _eval(t, ring, bundles)
            v = v if sign > 0 else -v
            out = v if out is None else out + v
        return out
    if isinstance(node, Tensor):
        if not isinstance(ring, ProductRing):
            raise RingMismatch("'⊗' is only meaningful in product rings")
        if len(node.factors) != len(ring.factors):
            raise RingMismatch(f"pure tensor has {len(node.factors)} factors, the ring has {len(ring.factors)}")
        return ring.tensor([_eval(f, r, {}) for f, r in zip(node.factors, ring.factors)])
    raise TypeError(node)


def _gen(name: str, ring: NumericalRing) -> RingClass:
    if name == "1":
        return ring.one()
    if isinstance(ring, ProjBundleRing):
        if name == "xi":
            return ring.xi
        if name == "f":
            return ring.f
    if isinstance(ring, GrassmannRing) and name.startswith("s["):
        if not ring.has_monomial(name):
            raise UnboundSymbol(f"Schubert class {name} does not fit in the {ring.k}x{ring.cols} box")
        return ring.gen(name)
    if isinstance(ring, ProductRing):
        if len(ring.factors) == 1:
            return ring.pullback(0, _gen(name, ring.factors[0]))
        raise UnboundSymbol(f"token {name!r} needs a pure tensor (use ⊗ or @) in a product ring")
    raise UnboundSymbol(f"unknown token {name!r} for {type(ring).__name__}")
