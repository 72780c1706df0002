"""Weighted-homogeneous polynomials in abstract Chern and Segre symbols."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

DUAL = "^v"


@dataclass(frozen=True, order=True)
class Symbol:
    """``c_i(B)`` (kind ``"c"``) or the Segre class ``s_i(B)`` (kind ``"s"``).

    A bundle name ending in ``^v`` denotes the dual bundle.
    """

    kind: str
    index: int
    bundle: str

    def __post_init__(self):
        if self.kind not in ("c", "s"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("symbols have index at least 1; index 0 is the constant 1")

    @property
    def weight(self) -> int:
        return self.index

    def __str__(self) -> str:
        return f"{self.kind}{self.index}({self.bundle})"


# A monomial is a sorted tuple of (symbol, exponent) pairs.
Monomial = tuple[tuple[Symbol, int], ...]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items()))


def _mono_weight(m: Monomial) -> int:
    return sum(s.weight * e for s, e in m)


class FormalChernPolynomial:
    """Sparse map monomial -> Fraction with a common total weight.

    The constant ``c_0 = 1`` is the empty monomial.  The zero polynomial still
    carries a weight so that sums stay homogeneous.
    """

    __slots__ = ("terms", "weight")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None, weight: int | None = None):
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[tuple(sorted(m))] = clean.get(tuple(sorted(m)), Fraction(0)) + c
        clean = {m: c for m, c in clean.items() if c != 0}
        weights = {_mono_weight(m) for m in clean}
        if len(weights) > 1:
            raise ValueError(f"polynomial is not weighted-homogeneous: weights {sorted(weights)}")
        if weights:
            w = weights.pop()
            if weight is not None and weight != w:
                raise ValueError(f"declared weight {weight} but monomials have weight {w}")
            weight = w
        if weight is None:
            raise ValueError("the zero polynomial needs an explicit weight")
        self.terms = dict(sorted(clean.items()))
        self.weight = weight

    # --- constructors --------------------------------------------------
    @classmethod
    def zero(cls, weight: int) -> FormalChernPolynomial:
        return cls({}, weight)

    @classmethod
    def one(cls) -> FormalChernPolynomial:
        return cls({(): Fraction(1)})

    @classmethod
    def constant(cls, value) -> FormalChernPolynomial:
        return cls({(): Fraction(value)}, 0)

    @classmethod
    def symbol(cls, sym: Symbol) -> FormalChernPolynomial:
        return cls({((sym, 1),): Fraction(1)})

    @classmethod
    def c(cls, i: int, bundle: str, rank: int | None = None) -> FormalChernPolynomial:
        """``c_i(bundle)``, with ``c_0 = 1`` and ``c_i = 0`` outside ``[0, rank]``."""
        if i == 0:
            return cls.one()
        if i < 0 or (rank is not None and i > rank):
            return cls.zero(i)
        return cls.symbol(Symbol("c", i, bundle))

    @classmethod
    def s(cls, i: int, bundle: str) -> FormalChernPolynomial:
        if i == 0:
            return cls.one()
        if i < 0:
            return cls.zero(i)
        return cls.symbol(Symbol("s", i, bundle))

    # --- arithmetic ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> set[Symbol]:
        return {s for m in self.terms for s, _ in m}

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            other = FormalChernPolynomial.constant(other)
        if not isinstance(other, FormalChernPolynomial):
            return NotImplemented
        if other.weight != self.weight:
            raise ValueError(f"cannot add weight {self.weight} and weight {other.weight}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FormalChernPolynomial(out, self.weight)

    __radd__ = __add__

    def __neg__(self):
        return FormalChernPolynomial({m: -c for m, c in self.terms.items()}, self.weight)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self
            other = FormalChernPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalChernPolynomial({m: c * other for m, c in self.terms.items()}, self.weight)
        if not isinstance(other, FormalChernPolynomial):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return FormalChernPolynomial(out, self.weight + other.weight)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = FormalChernPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FormalChernPolynomial.constant(other) if other != 0 else FormalChernPolynomial.zero(self.weight)
        if not isinstance(other, FormalChernPolynomial):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        return hash((self.weight, tuple(self.terms.items())))

    def coefficient(self, monomial: Iterable[tuple[Symbol, int]]) -> Fraction:
        return self.terms.get(tuple(sorted(monomial)), Fraction(0))

    # --- substitution --------------------------------------------------
    def substitute(self, rule: Callable[[Symbol], "FormalChernPolynomial | None"]) -> FormalChernPolynomial:
        """Replace symbols for which ``rule`` returns a polynomial.

        Each replacement must have the weight of the symbol it replaces.
        """
        out = FormalChernPolynomial.zero(self.weight)
        for m, c in self.terms.items():
            term = FormalChernPolynomial.constant(c)
            for sym, e in m:
                rep = rule(sym)
                if rep is None:
                    rep = FormalChernPolynomial.symbol(sym)
                elif rep.weight != sym.weight and not rep.is_zero():
                    raise ValueError(f"substitute for {sym} has weight {rep.weight}")
                elif rep.is_zero():
                    rep = FormalChernPolynomial.zero(sym.weight)
                term = term * rep**e
            out = out + term
        return out

    def evaluate_with(self, value_of: Callable[[Symbol], object], one, zero):
        """Evaluate into any ring given symbol values, the unit and the zero."""
        total = zero
        for m, c in self.terms.items():
            term = one
            for sym, e in m:
                v = value_of(sym)
                for _ in range(e):
                    term = term * v
            total = total + term * c
        return total

    def __repr__(self) -> str:
        return f"FormalChernPolynomial({self}, weight={self.weight})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms.items():
            factors = [str(s) + (f"^{e}" if e > 1 else "") for s, e in m]
            mono = "*".join(factors)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        s = out[0]
        for p in out[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s
