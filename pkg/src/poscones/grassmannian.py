"""Numerical rings of Grassmannians and of products of numerical rings."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .errors import BoxViolation, RingMismatch
from .ring import MixedClass, NumericalRing, RingClass
from .schur import Partition, VectorBundle, partitions

TENSOR = "⊗"


def schubert_name(lam: Partition) -> str:
    return "1" if not lam.parts else "s[" + ",".join(map(str, lam.parts)) + "]"


def box_partitions(rows: int, cols: int, weight: int) -> list[Partition]:
    return [p for p in partitions(weight, max_part=cols, max_len=rows)]


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Number of LR tableaux of shape ``nu/lam`` and content ``mu``.

    Cells are filled in reading order (rows top to bottom, each row right to
    left); rows weakly increase, columns strictly increase and the reading
    word must be a lattice word.
    """
    if nu.weight != lam.weight + mu.weight:
        return 0
    if any(lam[i] > nu[i] for i in range(len(lam))):
        return 0
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam[r] - 1, -1)]
    content = list(mu.parts)
    if not content:
        return 1 if lam == nu else 0
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(content) + 1)

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        hi = len(content)
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        above = filling.get((r - 1, c))
        lo = 1 if above is None else above + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += rec(idx + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return rec(0)


def lr_multiply(lam, mu, k: int, n: int, ring: "GrassmannRing | None" = None) -> RingClass:
    """``sigma_lam * sigma_mu`` in G(k, n), discarding partitions outside the box."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
    if ring is None:
        ring = GrassmannRing(k, n)
    for p in (lam, mu):
        if not p.fits(k, n - k):
            raise BoxViolation(f"partition {p} does not fit in the {k}x{n - k} box")
    return ring.gen(schubert_name(lam)) * ring.gen(schubert_name(mu))


class GrassmannRing(NumericalRing):
    """Numerical ring of G(k, n) in the Schubert basis.

    Codimension ``c`` basis: ``s[...]`` for partitions of ``c`` in the
    ``k x (n - k)`` box, descending lexicographic order; ``"1"`` is the empty
    partition.  Products use the Littlewood-Richardson rule.
    """

    def __init__(self, k: int, n: int):
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        self.k, self.n = k, n
        self.cols = n - k
        dim = k * (n - k)
        self._parts = {}
        bases = []
        for c in range(dim + 1):
            row = []
            for p in box_partitions(k, self.cols, c):
                name = schubert_name(p)
                self._parts[name] = p
                row.append(name)
            bases.append(row)
        super().__init__(dim, bases)
        self.name = f"G({k},{n})"

    def partition_of(self, name: str) -> Partition:
        return self._parts[name]

    def sigma(self, *parts: int) -> RingClass:
        p = Partition(tuple(parts))
        if not p.fits(self.k, self.cols):
            raise BoxViolation(f"partition {p} does not fit in the {self.k}x{self.cols} box")
        return self.gen(schubert_name(p))

    def _product(self, a: str, b: str):
        lam, mu = self._parts[a], self._parts[b]
        w = lam.weight + mu.weight
        out = {}
        for nu in box_partitions(self.k, self.cols, w):
            c = lr_coefficient(lam, mu, nu)
            if c:
                out[schubert_name(nu)] = Fraction(c)
        return out

    def __repr__(self):
        return f"GrassmannRing({self.k}, {self.n})"


def tautological_bundles(k: int, n: int, ring: GrassmannRing | None = None) -> tuple[VectorBundle, VectorBundle]:
    """The universal quotient ``Q`` and the dual ``R`` of the universal subbundle.

    ``c_i(Q) = sigma_(i)`` and ``c_i(R) = sigma_(1^i)``; both globally generated.
    """
    if ring is None:
        ring = GrassmannRing(k, n)
    cols = n - k
    cq = [ring.one()] + [ring.sigma(i) for i in range(1, cols + 1)]
    cr = [ring.one()] + [ring.sigma(*([1] * i)) for i in range(1, k + 1)]
    Q = VectorBundle("Q", cols, MixedClass(ring, cq), globally_generated=True)
    R = VectorBundle("R", k, MixedClass(ring, cr), globally_generated=True)
    return Q, R


class ProductRing(NumericalRing):
    """Kunneth ring of a product; pure tensors ``a⊗b⊗...`` form the basis.

    Within a codimension, monomials are ordered by the per-factor codimension
    tuple (descending lexicographic), then by each factor's basis order.  The
    pure tensor of units is named ``"1"``.
    """

    def __init__(self, factors: Sequence[NumericalRing]):
        factors = list(factors)
        if not factors:
            raise ValueError("a product needs at least one factor")
        self.factors = factors
        dim = sum(f.dim for f in factors)
        self._split = {}
        bases = []
        for c in range(dim + 1):
            row = []
            for split in _compositions(c, [f.dim for f in factors]):
                for combo in itertools.product(*(f.basis(ci) for f, ci in zip(factors, split))):
                    name = self._join(combo)
                    self._split[name] = combo
                    row.append(name)
            bases.append(row)
        super().__init__(dim, bases)
        self.name = " x ".join(getattr(f, "name", "?") for f in factors)

    def _join(self, combo) -> str:
        if len(self.factors) == 1:
            return combo[0]
        if all(m == "1" for m in combo):
            return "1"
        return TENSOR.join(combo)

    def factor_monomials(self, name: str) -> tuple[str, ...]:
        return self._split[name]

    def _product(self, a: str, b: str):
        terms = {(): Fraction(1)}
        for f, x, y in zip(self.factors, self._split[a], self._split[b]):
            prod = f.product_rule(x, y)
            terms = {key + (m,): c * cm for key, c in terms.items() for m, cm in prod.coeffs.items()}
        return {self._join(key): c for key, c in terms.items()}

    def tensor(self, classes: Sequence[RingClass]) -> RingClass:
        """Pure tensor of one class per factor."""
        if len(classes) != len(self.factors):
            raise ValueError(f"need {len(self.factors)} factor classes")
        terms = {(): Fraction(1)}
        for f, cl in zip(self.factors, classes):
            if cl.ring is not f:
                raise RingMismatch("tensor factor from the wrong ring")
            terms = {key + (m,): c * cm for key, c in terms.items() for m, cm in cl.coeffs.items()}
        k = sum(cl.codim for cl in classes)
        return RingClass(self, k, {self._join(key): c for key, c in terms.items()})

    def pullback(self, i: int, cl: RingClass) -> RingClass:
        """Pull a class back along the projection to factor ``i``."""
        parts = [f.one() for f in self.factors]
        parts[i] = cl
        return self.tensor(parts)

    def pullback_bundle(self, i: int, E: VectorBundle, name: str) -> VectorBundle:
        chern = [self.pullback(i, E.c(j)) for j in range(E.ring.dim + 1)]
        return VectorBundle(name, E.rank, MixedClass(self, chern),
                            globally_generated=E.globally_generated, nef=E.nef, ample=E.ample)

    def __repr__(self):
        return f"ProductRing({self.factors!r})"


def _compositions(total: int, caps: Sequence[int]):
    """Tuples ``(c_1..c_m)`` with ``0 <= c_i <= caps[i]`` summing to ``total``, descending lex."""
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]), -1, -1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first,) + rest


def product_ring(factors: Sequence[NumericalRing]) -> ProductRing:
    return ProductRing(factors)
