"""Chern/Segre calculus: Schur determinants, series inversion, twists.

Formal operations work on :class:`~poscones.formal.FormalChernPolynomial`
over abstract bundle names.  :func:`evaluate` is the separate step that
substitutes the total Chern classes of concrete :class:`VectorBundle` objects
living in one numerical ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, Sequence, Union

from .errors import CodimMismatch, RingMismatch, UnboundSymbol
from .formal import DUAL, FormalChernPolynomial, Symbol
from .ring import MixedClass, NumericalRing, RingClass

FCP = FormalChernPolynomial


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing nonnegative parts; trailing zeros are dropped."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def fits(self, rows: int, cols: int) -> bool:
        return len(self.parts) <= rows and (not self.parts or self.parts[0] <= cols)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def partitions(weight: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[Partition]:
    """Partitions of ``weight`` in descending lexicographic order."""
    if max_part is None:
        max_part = weight
    if max_len is None:
        max_len = weight

    def rec(remaining: int, cap: int, slots: int):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    for p in rec(weight, max_part, max_len):
        yield Partition(p)


@dataclass(frozen=True)
class VectorBundle:
    """A bundle in a model ring: rank, total Chern class and positivity flags.

    ``nef`` is forced on when the bundle is globally generated or ample.
    """

    name: str
    rank: int
    total_chern: MixedClass
    globally_generated: bool = False
    nef: bool = False
    ample: bool = False
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if not self.total_chern[0] == self.ring.one():
            raise ValueError(f"{self.name}: c_0 must be 1")
        for i in range(self.rank + 1, self.ring.dim + 1):
            if not self.total_chern[i].is_zero():
                raise ValueError(f"{self.name}: c_{i} is nonzero above the rank {self.rank}")
        if self.globally_generated or self.ample:
            object.__setattr__(self, "nef", True)

    @property
    def ring(self) -> NumericalRing:
        return self.total_chern.ring

    def c(self, i: int) -> RingClass:
        if i < 0:
            raise CodimMismatch("negative Chern index")
        return self.total_chern[i]


def make_bundle(name: str, rank: int, chern: Sequence[RingClass], ring: NumericalRing, **flags) -> VectorBundle:
    """Bundle from ``[c_1, ..., c_r]`` (``c_0`` is implied)."""
    return VectorBundle(name, rank, MixedClass(ring, [ring.one(), *chern]), **flags)


# ---------------------------------------------------------------------------
# Formal operations


def jacobi_trudi(lam: Partition | Sequence[int], e: int, bundle: str = "E") -> FCP:
    """Determinant ``det(c_{lam_i + j - i})`` in ``c_1..c_e`` of ``bundle``."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    k = len(lam)
    if k == 0:
        return FCP.one()
    rows = [[FCP.c(lam[i] + j - i, bundle, e) for j in range(k)] for i in range(k)]
    return _det(rows, lam.weight)


def _det(rows: list[list[FCP]], weight: int) -> FCP:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = FCP.zero(weight)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sub = _det(minor, weight - entry.weight)
        term = entry * sub
        total = total + (term if j % 2 == 0 else -term)
    return total


def total_chern_symbols(bundle: str, rank: int, up_to: int) -> list[FCP]:
    return [FCP.c(i, bundle, rank) for i in range(up_to + 1)]


def series_inverse(series: Sequence, up_to: int, one=None) -> list:
    """Inverse of ``1 + a_1 + a_2 + ...`` truncated at weight ``up_to``.

    Works for any homogeneous elements supporting ``+``, ``-`` and ``*``;
    ``series[0]`` is assumed to be the unit.
    """
    one = series[0] if one is None else one
    return series_divide([one] + [_zero_like(series, i) for i in range(1, up_to + 1)], series, up_to)


def series_divide(num: Sequence, den: Sequence, up_to: int) -> list:
    """``num / den`` for graded series with ``den[0] = 1``, weights ``0..up_to``."""
    out = []
    for i in range(up_to + 1):
        term = num[i] if i < len(num) else _zero_like(num, i)
        for j in range(1, i + 1):
            if j < len(den):
                term = term - den[j] * out[i - j]
        out.append(term)
    return out


def series_multiply(a: Sequence, b: Sequence, up_to: int) -> list:
    out = []
    for i in range(up_to + 1):
        term = _zero_like(a, i)
        for j in range(i + 1):
            if j < len(a) and i - j < len(b):
                term = term + a[j] * b[i - j]
        out.append(term)
    return out


def _zero_like(series: Sequence, weight: int):
    x = series[0]
    if isinstance(x, FCP):
        return FCP.zero(weight)
    if isinstance(x, RingClass):
        return x.ring.zero(weight)
    return 0


def dual_segre_series(E: Union[VectorBundle, str], up_to: int, rank: int | None = None) -> list[FCP]:
    """``s_i(E^v)`` for ``i <= up_to`` as polynomials in ``c_j(E)``.

    Inverts ``c(E^v) = 1 - c_1 + c_2 - ...``.
    """
    name, e = _name_rank(E, rank)
    cdual = [FCP.c(i, name, e) * (-1) ** i for i in range(up_to + 1)]
    return series_inverse(cdual, up_to)


def segre_series(E: Union[VectorBundle, str], up_to: int, rank: int | None = None) -> list[FCP]:
    """``s_i(E)``: the inverse of the total Chern series ``c(E)``."""
    name, e = _name_rank(E, rank)
    return series_inverse(total_chern_symbols(name, e, up_to), up_to)


def _name_rank(E, rank):
    if isinstance(E, VectorBundle):
        return E.name, E.rank
    if rank is None:
        raise ValueError("rank needed for a bare bundle name")
    return E, rank


def whitney_quotient(cF, cE, up_to: int | None = None):
    """``c(G) = c(F) / c(E)`` for ``0 -> E -> F -> G -> 0``.

    Accepts two :class:`MixedClass` values (truncated at the ring dimension)
    or two sequences of formal polynomials (truncated at ``up_to``, default the
    length of ``cF``).
    """
    if isinstance(cF, MixedClass) or isinstance(cE, MixedClass):
        if not (isinstance(cF, MixedClass) and isinstance(cE, MixedClass)):
            raise TypeError("mix of ring classes and formal series")
        if cF.ring is not cE.ring:
            raise RingMismatch("total Chern classes from different rings")
        n = cF.ring.dim
        return MixedClass(cF.ring, series_divide(list(cF.parts), list(cE.parts), n))
    if up_to is None:
        up_to = len(cF) - 1
    return series_divide(list(cF), list(cE), up_to)


def segre_tensor_line(e: int, i: int, bundle: str = "E", line: str = "L") -> FCP:
    """``s_i(E (x) L)`` in the Segre classes ``s_j(E)`` and ``t = c_1(L)``.

    Uses the binomial ``C(e - 1 + i, e - 1 + j)`` for ``E`` of rank ``e``.
    """
    if e < 1 or i < 0:
        raise ValueError("need e >= 1 and i >= 0")
    t = FCP.c(1, line)
    out = FCP.zero(i)
    for j in range(i + 1):
        out = out + FCP.s(j, bundle) * t ** (i - j) * ((-1) ** (i - j) * comb(e - 1 + i, e - 1 + j))
    return out


def chern_tensor_line(e: int, i: int, bundle: str = "E", line: str = "L") -> FCP:
    """``c_i(E (x) L)`` in ``c_j(E)`` and ``t = c_1(L)``.

    Obtained by inverting the Segre series of ``E (x) L`` after rewriting
    ``s_j(E)`` through ``c(E)``; no closed form is used.
    """
    if e < 1 or i < 0:
        raise ValueError("need e >= 1 and i >= 0")
    segre_E = segre_series(bundle, i, rank=e)

    def to_chern(sym: Symbol):
        if sym.kind == "s" and sym.bundle == bundle:
            return segre_E[sym.index]
        return None

    s_twisted = [segre_tensor_line(e, k, bundle, line).substitute(to_chern) for k in range(i + 1)]
    return series_inverse(s_twisted, i)[i]


def twisted_name(bundle: str, line: str, m: int) -> str:
    return f"{bundle}({m}{line})"


def twist_expand(E: Union[VectorBundle, str], H: Union[VectorBundle, RingClass, str], m: int, i: int,
                 rank: int | None = None) -> FCP:
    """Rewrite ``c_i(E)`` through ``c_j(E(mH))`` and ``c_1(H)``.

    The twisted bundle is named ``E(mH)``.  Works by recursion on ``i``:
    solve the forward expansion of ``c_i(E(mH))`` for ``c_i(E)`` and replace
    the lower ``c_j(E)`` by their own rewrites.
    """
    name, e = _name_rank(E, rank)
    hname = H.name if isinstance(H, VectorBundle) else (H if isinstance(H, str) else "H")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if i > e:
        return FCP.zero(i)
    if m == 0:
        return FCP.c(i, name, e)
    twisted = twisted_name(name, hname, m)
    h = FCP.c(1, hname)
    # forward[i][j]: coefficient of c_j(E) t^(i-j) in c_i(E (x) L).
    memo: dict[int, FCP] = {0: FCP.one()}
    for k in range(1, i + 1):
        fwd = chern_tensor_line(e, k, name, "__t")
        out = FCP.c(k, twisted, e)
        for j in range(k):
            coeff = _linear_coefficient(fwd, name, j, k - j)
            if coeff:
                out = out - memo[j] * (h * m) ** (k - j) * coeff
        memo[k] = out
    return memo[i]


def _linear_coefficient(poly: FCP, bundle: str, j: int, tpow: int) -> Fraction:
    mono = []
    if j > 0:
        mono.append((Symbol("c", j, bundle), 1))
    if tpow > 0:
        mono.append((Symbol("c", 1, "__t"), tpow))
    return poly.coefficient(mono)


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(P: FCP, env: Mapping[str, VectorBundle], ring: NumericalRing | None = None) -> RingClass:
    """Substitute the Chern classes of bound bundles and multiply in the ring.

    ``c_i(B^v)`` becomes ``(-1)^i c_i(B)``; ``s_i(B)`` is the weight ``i`` part
    of ``c(B)^{-1}``.
    """
    names = {_base(s.bundle) for s in P.symbols()}
    missing = sorted(n for n in names if n not in env)
    if missing:
        raise UnboundSymbol(f"unbound bundle name(s): {', '.join(missing)}")
    rings = {id(env[n].ring): env[n].ring for n in names}
    if ring is not None:
        rings.setdefault(id(ring), ring)
    if len(rings) > 1:
        raise RingMismatch("bundles live in different rings")
    if not rings:
        raise ValueError("cannot infer the ring of a constant polynomial; pass ring=")
    (R,) = rings.values()
    segre_cache: dict[str, list[RingClass]] = {}

    def chern_of(bundle: str) -> list[RingClass]:
        base = env[_base(bundle)]
        sign = -1 if bundle.endswith(DUAL) else 1
        return [base.c(i) * (sign ** i) for i in range(R.dim + 1)]

    def value(sym: Symbol) -> RingClass:
        if sym.index > R.dim:
            return R.zero(sym.index)
        if sym.kind == "c":
            return chern_of(sym.bundle)[sym.index]
        if sym.bundle not in segre_cache:
            segre_cache[sym.bundle] = series_inverse(chern_of(sym.bundle), R.dim)
        return segre_cache[sym.bundle][sym.index]

    return P.evaluate_with(value, R.one(), R.zero(P.weight))


def _base(name: str) -> str:
    return name[: -len(DUAL)] if name.endswith(DUAL) else name


def schur_class(lam: Partition | Sequence[int], bundle: VectorBundle) -> RingClass:
    """``s_lambda(bundle)`` evaluated in the bundle's ring."""
    P = jacobi_trudi(lam, bundle.rank, bundle.name)
    return evaluate(P, {bundle.name: bundle}, bundle.ring)
