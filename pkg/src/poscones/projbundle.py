"""Projective bundles P(E) over a smooth curve, from Harder-Narasimhan data.

The numerical ring has basis ``xi^a`` and ``xi^a*f`` with ``f^2 = 0`` and
``xi^e = d * xi^(e-1)*f`` where ``e = rank E`` and ``d = deg E``.  Only the
rank and degree enter the ring; the genus is carried as metadata and used
only to decide global generation of the built-in bundles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import InvalidHN, RangeError
from .ring import MixedClass, NumericalRing, RingClass
from .schur import VectorBundle, whitney_quotient


@dataclass(frozen=True)
class HNData:
    """Ranks and degrees of the semistable HN quotients, slopes strictly increasing."""

    quotients: tuple[tuple[int, int], ...]
    genus: int = 0

    def __post_init__(self):
        qs = tuple((int(r), int(d)) for r, d in self.quotients)
        object.__setattr__(self, "quotients", qs)
        if not qs:
            raise InvalidHN("need at least one quotient")
        if any(r < 1 for r, _ in qs):
            raise InvalidHN("quotient ranks must be positive")
        if self.genus < 0:
            raise InvalidHN("genus must be nonnegative")
        sl = self.slopes
        for a, b in zip(sl, sl[1:]):
            if not a < b:
                raise InvalidHN(f"slopes must strictly increase, got {a} then {b}")

    @property
    def slopes(self) -> list[Fraction]:
        return [Fraction(d, r) for r, d in self.quotients]

    @property
    def rank(self) -> int:
        return sum(r for r, _ in self.quotients)

    @property
    def degree(self) -> int:
        return sum(d for _, d in self.quotients)

    def drop_first(self) -> HNData:
        return HNData(self.quotients[1:], self.genus)


def xi_name(a: int, with_f: bool) -> str:
    if a == 0:
        return "f" if with_f else "1"
    x = "xi" if a == 1 else f"xi^{a}"
    return x + "*f" if with_f else x


class ProjBundleRing(NumericalRing):
    """Numerical ring of P(E) over a curve.

    Codimension ``c`` basis, in order: ``xi^(c-1)*f``, ``xi^c`` (the latter only
    for ``c < e``).  The point class is ``xi^(e-1)*f``.
    """

    def __init__(self, hn: HNData):
        self.hn = hn
        self.e = hn.rank
        self.d = hn.degree
        e = self.e
        bases = [["1"]]
        for c in range(1, e + 1):
            row = [xi_name(c - 1, True)]
            if c < e:
                row.append(xi_name(c, False))
            bases.append(row)
        super().__init__(e, bases)
        self._exps = {}
        for row in bases:
            for name in row:
                self._exps[name] = self._parse(name)
        self.name = f"P(E) over a genus {hn.genus} curve, E of rank {e} and degree {self.d}"

    @staticmethod
    def _parse(name: str) -> tuple[int, int]:
        if name == "1":
            return 0, 0
        b = 1 if name.endswith("f") else 0
        head = name[:-2] if name.endswith("*f") else ("" if name == "f" else name)
        if not head:
            a = 0
        elif head == "xi":
            a = 1
        else:
            a = int(head.split("^")[1])
        return a, b

    def reduce(self, a: int, b: int) -> RingClass:
        """Normal form of ``xi^a f^b``."""
        if a < 0 or b < 0:
            raise ValueError("negative exponent")
        k = a + b
        if b >= 2 or k > self.e:
            return self.zero(k)
        if b == 1:
            return self.gen(xi_name(a, True))
        if a < self.e:
            return self.gen(xi_name(a, False))
        return self.reduce(a - 1, 1) * self.d

    def _product(self, x: str, y: str):
        a1, b1 = self._exps[x]
        a2, b2 = self._exps[y]
        return self.reduce(a1 + a2, b1 + b2).coeffs

    @property
    def xi(self) -> RingClass:
        return self.gen("xi") if self.e > 1 else self.reduce(1, 0)

    @property
    def f(self) -> RingClass:
        return self.gen("f")

    def __repr__(self):
        return f"ProjBundleRing({self.hn!r})"


def build_ring(hn: HNData) -> ProjBundleRing:
    return ProjBundleRing(hn)


def nu(hn: HNData, k: int) -> Fraction:
    """Coefficient of ``xi^(k-1) f`` in the non-fiber generator of Nef^k."""
    if not 1 <= k <= hn.rank - 1:
        raise RangeError(f"k must lie in [1, {hn.rank - 1}], got {k}")
    r1 = hn.quotients[0][0]
    mu1 = hn.slopes[0]
    if k <= r1:
        return -k * mu1
    return nu(hn.drop_first(), k - r1) - r1 * mu1


def nef_generators(ring: ProjBundleRing, k: int) -> tuple[RingClass, RingClass]:
    """``xi^k + nu^(k) xi^(k-1) f`` and ``xi^(k-1) f``."""
    v = nu(ring.hn, k)
    return ring.reduce(k, 0) + ring.reduce(k - 1, 1) * v, ring.reduce(k - 1, 1)


def nef_cone(hn_or_ring, k: int):
    from .cones import PolyCone

    ring = hn_or_ring if isinstance(hn_or_ring, ProjBundleRing) else ProjBundleRing(hn_or_ring)
    gens = nef_generators(ring, k)
    return PolyCone.from_classes(gens)


def builtin_bundles(ring: ProjBundleRing) -> dict[str, VectorBundle]:
    """Standard bundles on P(E).

    * ``O1``: O(1), ``c_1 = xi``.
    * ``Om1``: O(-1).
    * ``F``: pullback of a line bundle of degree ``max(1, 2g)`` on the curve.
    * ``H``: ``O(1)`` twisted by the pullback of the smallest degree ``m``
      line bundle making ``E(m)`` globally generated.
    * ``Ev``: the pullback of ``E^v``, ``c = 1 - d f``.
    * ``Q``: the quotient ``0 -> O(-1) -> pi^* E^v -> Q -> 0``.

    Global generation uses: a semistable bundle on a genus ``g`` curve with
    slope above ``2g - 1`` is globally generated (any nonnegative slope when
    ``g = 0``, where bundles split).
    """
    hn = ring.hn
    g = hn.genus
    one, xi, f = ring.one(), ring.reduce(1, 0), ring.f
    e, d = ring.e, ring.d

    def gg_slope(mu: Fraction) -> bool:
        return mu >= 0 if g == 0 else mu > 2 * g - 1

    mu_min, mu_max = hn.slopes[0], hn.slopes[-1]
    deg_f = max(1, 2 * g)
    # smallest integer m with E(m) globally generated
    m = ceil(-mu_min) if g == 0 else int((2 * g - 1 - mu_min) // 1) + 1
    out = {}
    out["O1"] = _line("O1", ring, xi, gg=gg_slope(mu_min), nef=mu_min >= 0)
    out["Om1"] = _line("Om1", ring, -xi, gg=False, nef=False)
    out["F"] = _line("F", ring, f * deg_f, gg=True, nef=True)
    out["H"] = _line("H", ring, xi + f * m, gg=True, nef=True)
    ev = MixedClass(ring, [one, f * (-d)])
    out["Ev"] = VectorBundle("Ev", e, ev, globally_generated=gg_slope(-mu_max), nef=mu_max <= 0)
    cq = whitney_quotient(ev, out["Om1"].total_chern)
    if e >= 2:
        gg_q = out["Ev"].globally_generated
        out["Q"] = VectorBundle("Q", e - 1, cq, globally_generated=gg_q, nef=out["Ev"].nef)
    return out


def _line(name: str, ring: NumericalRing, c1: RingClass, gg: bool, nef: bool) -> VectorBundle:
    return VectorBundle(name, 1, MixedClass(ring, [ring.one(), c1]), globally_generated=gg, nef=nef)


def plandflop_hn() -> HNData:
    """O + O + O(-1) on P^1."""
    return HNData(((1, -1), (2, 0)), genus=0)


def known_eff_plandflop(ring: ProjBundleRing) -> dict[int, list[RingClass]]:
    """Literal pseudoeffective cone generators for O + O + O(-1) on P^1."""
    xi, f = ring.xi, ring.f
    return {1: [f, xi], 2: [xi * f, xi * xi]}
