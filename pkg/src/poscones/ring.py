"""Graded numerical rings with explicit monomial bases.

A :class:`NumericalRing` is presented by a basis in every codimension and a
product rule on pairs of basis monomials.  Classes are sparse maps from basis
names to exact rationals.  Subclasses supply ``_basis`` and ``_product``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import CodimMismatch, RingMismatch
from .linalg import Matrix


class NumericalRing:
    """Base class for the supported numerical rings.

    ``basis(k)`` lists the codimension ``k`` monomials in their documented
    order; ``basis(0)`` is always ``["1"]`` and ``basis(dim)`` has the point
    class as its only element.
    """

    name = "ring"

    def __init__(self, dim: int, bases: Sequence[Sequence[str]]):
        if dim < 1:
            raise ValueError("ring dimension must be at least 1")
        if len(bases) != dim + 1:
            raise ValueError("need one basis per codimension 0..dim")
        if list(bases[0]) != ["1"]:
            raise ValueError('codimension 0 basis must be ["1"]')
        if len(bases[dim]) != 1:
            raise ValueError("top codimension must be spanned by the point class")
        self.dim = dim
        self._bases = tuple(tuple(b) for b in bases)
        self._codim_of = {}
        for k, b in enumerate(self._bases):
            for name in b:
                if name in self._codim_of:
                    raise ValueError(f"duplicate basis monomial {name!r}")
                self._codim_of[name] = k
        self._mul_cache = lru_cache(maxsize=None)(self._product_checked)

    # --- subclass hook -------------------------------------------------
    def _product(self, a: str, b: str) -> Mapping[str, Fraction]:
        raise NotImplementedError

    # --- basis ---------------------------------------------------------
    def basis(self, k: int) -> tuple[str, ...]:
        if 0 <= k <= self.dim:
            return self._bases[k]
        return ()

    def codim_of(self, monomial: str) -> int:
        return self._codim_of[monomial]

    def has_monomial(self, monomial: str) -> bool:
        return monomial in self._codim_of

    @property
    def point_name(self) -> str:
        return self._bases[self.dim][0]

    def _product_checked(self, a: str, b: str) -> tuple[tuple[str, Fraction], ...]:
        if a == "1":
            return ((b, Fraction(1)),)
        if b == "1":
            return ((a, Fraction(1)),)
        if self._codim_of[a] + self._codim_of[b] > self.dim:
            return ()
        out = self._product(a, b)
        return tuple((m, Fraction(c)) for m, c in out.items() if c != 0)

    def product_rule(self, a: str, b: str) -> RingClass:
        """Product of two basis monomials as a class."""
        k = self._codim_of[a] + self._codim_of[b]
        return RingClass(self, k, dict(self._mul_cache(a, b)))

    # --- classes -------------------------------------------------------
    def one(self) -> RingClass:
        return RingClass(self, 0, {"1": Fraction(1)})

    def point(self) -> RingClass:
        return RingClass(self, self.dim, {self.point_name: Fraction(1)})

    def zero(self, k: int) -> RingClass:
        return RingClass(self, k, {})

    def gen(self, monomial: str) -> RingClass:
        """The class of a single basis monomial."""
        return RingClass(self, self._codim_of[monomial], {monomial: Fraction(1)})

    def from_coords(self, k: int, coords: Sequence) -> RingClass:
        b = self.basis(k)
        if len(coords) != len(b):
            raise CodimMismatch(f"expected {len(b)} coordinates in codimension {k}, got {len(coords)}")
        return RingClass(self, k, {m: Fraction(c) for m, c in zip(b, coords)})

    def pairing_matrix(self, k: int) -> Matrix:
        return pairing_matrix(self, k)

    @cached_property
    def _pairings(self) -> dict:
        return {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


class RingClass:
    """A homogeneous class: codimension plus sparse coefficients.

    Instances are immutable; arithmetic returns new classes.  Coefficients are
    stored in basis order with zeros dropped, so equality and hashing are
    structural.
    """

    __slots__ = ("ring", "codim", "_coeffs")

    def __init__(self, ring: NumericalRing, codim: int, coeffs: Mapping[str, Fraction] | None = None):
        if codim < 0:
            raise CodimMismatch("negative codimension")
        coeffs = coeffs or {}
        for m in coeffs:
            if not ring.has_monomial(m) or ring.codim_of(m) != codim:
                raise CodimMismatch(f"monomial {m!r} is not in the codimension {codim} basis")
        order = ring.basis(codim)
        self.ring = ring
        self.codim = codim
        self._coeffs = tuple(
            (m, Fraction(coeffs[m])) for m in order if m in coeffs and coeffs[m] != 0
        )

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    def coords(self) -> list[Fraction]:
        c = dict(self._coeffs)
        return [c.get(m, Fraction(0)) for m in self.ring.basis(self.codim)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: RingClass) -> None:
        if other.ring is not self.ring:
            raise RingMismatch("classes live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        if not isinstance(other, RingClass):
            return NotImplemented
        self._check(other)
        if other.codim != self.codim:
            raise CodimMismatch(f"cannot add codimension {self.codim} and {other.codim}")
        out = dict(self._coeffs)
        for m, c in other._coeffs:
            out[m] = out.get(m, 0) + c
        return RingClass(self.ring, self.codim, out)

    __radd__ = __add__

    def __neg__(self) -> RingClass:
        return RingClass(self.ring, self.codim, {m: -c for m, c in self._coeffs})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        if not isinstance(other, RingClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingClass(self.ring, self.codim, {m: c * other for m, c in self._coeffs})
        if not isinstance(other, RingClass):
            return NotImplemented
        self._check(other)
        k = self.codim + other.codim
        out: dict[str, Fraction] = {}
        if k <= self.ring.dim:
            for a, ca in self._coeffs:
                for b, cb in other._coeffs:
                    for m, c in self.ring._mul_cache(a, b):
                        out[m] = out.get(m, 0) + ca * cb * c
        return RingClass(self.ring, k, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> RingClass:
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        if not isinstance(other, RingClass):
            return NotImplemented
        return self.ring is other.ring and self.codim == other.codim and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((id(self.ring), self.codim, self._coeffs))

    def __repr__(self) -> str:
        return f"RingClass({format_class(self)}, codim={self.codim})"

    def __str__(self) -> str:
        return format_class(self)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_class(a: RingClass) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for m, c in a._coeffs:
        if c == 1:
            term = m
        elif c == -1:
            term = "-" + m
        else:
            term = f"{format_rational(c)}*{m}" if m != "1" else format_rational(c)
        parts.append(term)
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def add(a: RingClass, b: RingClass) -> RingClass:
    return a + b


def mul(a: RingClass, b: RingClass) -> RingClass:
    return a * b


def degree(a: RingClass) -> Fraction:
    """Coefficient of the point class; only defined in top codimension."""
    if a.codim != a.ring.dim:
        raise CodimMismatch(f"degree needs codimension {a.ring.dim}, got {a.codim}")
    return a.coeffs.get(a.ring.point_name, Fraction(0))


def pairing_matrix(ring: NumericalRing, k: int) -> Matrix:
    """``P[i][j] = deg(b_i * b'_j)`` for the codim ``k`` and ``dim - k`` bases."""
    if not 0 <= k <= ring.dim:
        raise CodimMismatch(f"codimension {k} outside [0, {ring.dim}]")
    cache = ring._pairings
    if k not in cache:
        rows = [
            [degree(ring.product_rule(a, b)) for b in ring.basis(ring.dim - k)]
            for a in ring.basis(k)
        ]
        cache[k] = rows
    return [list(r) for r in cache[k]]


class MixedClass:
    """Formal direct sum over codimensions; used for total Chern classes.

    ``parts[i]`` has codimension ``i``; the sum is truncated at the ring
    dimension.
    """

    __slots__ = ("ring", "parts")

    def __init__(self, ring: NumericalRing, parts: Iterable[RingClass]):
        parts = list(parts)
        out = []
        for i in range(ring.dim + 1):
            if i < len(parts):
                p = parts[i]
                if p.ring is not ring:
                    raise RingMismatch("component from a different ring")
                if p.codim != i:
                    raise CodimMismatch(f"component {i} has codimension {p.codim}")
                out.append(p)
            else:
                out.append(ring.zero(i))
        self.ring = ring
        self.parts = tuple(out)

    def __getitem__(self, i: int) -> RingClass:
        if 0 <= i < len(self.parts):
            return self.parts[i]
        return self.ring.zero(i)

    def __mul__(self, other: MixedClass) -> MixedClass:
        if other.ring is not self.ring:
            raise RingMismatch("classes live in different rings")
        n = self.ring.dim
        return MixedClass(
            self.ring,
            [sum((self[j] * other[i - j] for j in range(i + 1)), self.ring.zero(i)) for i in range(n + 1)],
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedClass) and self.ring is other.ring and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self) -> str:
        terms = [format_class(p) for p in self.parts if not p.is_zero()]
        return "MixedClass(" + " + ".join(f"({t})" for t in terms) + ")"
