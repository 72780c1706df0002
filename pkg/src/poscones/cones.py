"""Exact polyhedral cones.

Cones are stored by generators (primitive integer vectors).  Facets come from
the double description method run on the dual inequality system, with
integer arithmetic throughout.  Non-salient and lower-dimensional cones are
allowed: equations appear in the facet list as a pair of opposite
functionals.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CodimMismatch, DimMismatch, NotSymmetric, RingMismatch, SingularPairing, ZeroVector
from .linalg import berkowitz, det, dot, inverse, matvec, primitive, rref
from .ring import RingClass, degree

IntVec = tuple[int, ...]


# ---------------------------------------------------------------------------
# Double description


def _int_vec(v: Sequence) -> IntVec:
    return primitive(v)


def double_description(ineqs: Iterable[Sequence[int]], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Generators of ``{y : a . y >= 0 for all a in ineqs}``.

    Returns ``(lines, rays)``: a basis of the lineality space and the extreme
    rays of the pointed part (not yet canonicalized).  Motzkin's incremental
    method with the combinatorial adjacency test.
    """
    lines: list[IntVec] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[IntVec] = []
    tight: list[frozenset[int]] = []
    for idx, a in enumerate(ineqs):
        a = _int_vec(a)
        if not any(a):
            continue
        pivot = next((l for l in lines if dot(a, l) != 0), None)
        if pivot is not None:
            al = dot(a, pivot)
            if al < 0:
                pivot = tuple(-x for x in pivot)
                al = -al
            new_lines = []
            for l in lines:
                if l is pivot or l == tuple(-x for x in pivot):
                    continue
                p = tuple(al * x - dot(a, l) * y for x, y in zip(l, pivot))
                if any(p):
                    new_lines.append(_int_vec(p))
            new_rays, new_tight = [], []
            for r, z in zip(rays, tight):
                p = tuple(al * x - dot(a, r) * y for x, y in zip(r, pivot))
                new_rays.append(_int_vec(p))
                new_tight.append(z | {idx})
            # pivot is tight on every earlier inequality (those vanish on lines)
            new_rays.append(pivot)
            new_tight.append(frozenset(range(idx)))
            lines, rays, tight = new_lines, new_rays, new_tight
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_tight = [tight[i] for i in pos] + [tight[i] | {idx} for i in zer]
        for i in pos:
            for j in neg:
                common = tight[i] & tight[j]
                if any(
                    common <= tight[k] for k in range(len(rays)) if k != i and k != j
                ):
                    continue
                p = tuple(vals[i] * x - vals[j] * y for x, y in zip(rays[j], rays[i]))
                new_rays.append(_int_vec(p))
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight
    return lines, rays


def _canonical_basis(vectors: Sequence[Sequence], dim: int) -> list[IntVec]:
    """Canonical integer basis of a span (integerized RREF rows)."""
    if not vectors:
        return []
    r, piv = rref(vectors)
    return [_int_vec(r[i]) for i in range(len(piv))]


def _project_out(v: Sequence, basis: Sequence[Sequence]) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    v = [Fraction(x) for x in v]
    if not basis:
        return v
    gram = [[Fraction(dot(b, c)) for c in basis] for b in basis]
    rhs = [Fraction(dot(b, v)) for b in basis]
    coeffs = matvec(inverse(gram), rhs)
    out = list(v)
    for c, b in zip(coeffs, basis):
        out = [x - c * y for x, y in zip(out, b)]
    return out


def _canonical(lines: Sequence[IntVec], rays: Sequence[IntVec], dim: int) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    lin = _canonical_basis(lines, dim)
    out = set()
    for r in rays:
        p = _project_out(r, lin)
        if any(p):
            out.add(_int_vec(p))
    return tuple(lin), tuple(sorted(out))


# ---------------------------------------------------------------------------


class PolyCone:
    """A finitely generated rational cone in ``Q^ambient_dim``.

    ``basis`` optionally names the coordinates (used for serialization).
    Facets are computed on first use and cached; recomputation is harmless
    since it is deterministic.
    """

    def __init__(self, ambient_dim: int, rays: Iterable[Sequence] = (), basis: Sequence[str] | None = None,
                 codim: int | None = None):
        seen = []
        for r in rays:
            r = list(r)
            if len(r) != ambient_dim:
                raise DimMismatch(f"ray of length {len(r)} in a cone of dimension {ambient_dim}")
            if not any(Fraction(x) for x in r):
                raise ZeroVector("zero vector given as a cone generator")
            p = _int_vec(r)
            if p not in seen:
                seen.append(p)
        self.ambient_dim = ambient_dim
        self.rays: tuple[IntVec, ...] = tuple(seen)
        self.basis = tuple(basis) if basis is not None else None
        if self.basis is not None and len(self.basis) != ambient_dim:
            raise DimMismatch("basis header length differs from the ambient dimension")
        self.codim = codim
        self._lock = threading.Lock()
        self._facet_data = None
        self._gen_data = None

    # --- construction --------------------------------------------------
    @classmethod
    def hull(cls, vectors: Iterable[Sequence], ambient_dim: int | None = None, **kw) -> PolyCone:
        vectors = [list(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise DimMismatch("ambient dimension needed for an empty generator list")
            ambient_dim = len(vectors[0])
        return cls(ambient_dim, vectors, **kw)

    @classmethod
    def from_classes(cls, classes: Sequence[RingClass], ring=None, codim: int | None = None) -> PolyCone:
        """Cone over ring classes of one codimension; zero classes are dropped."""
        classes = list(classes)
        if classes:
            ring = classes[0].ring if ring is None else ring
            codim = classes[0].codim if codim is None else codim
        if ring is None or codim is None:
            raise ValueError("ring and codim are needed for an empty class list")
        for c in classes:
            if c.ring is not ring:
                raise RingMismatch("classes from different rings")
            if c.codim != codim:
                raise CodimMismatch(f"class of codimension {c.codim} in a codimension {codim} cone")
        vecs = [c.coords() for c in classes if not c.is_zero()]
        return cls(len(ring.basis(codim)), vecs, basis=ring.basis(codim), codim=codim)

    # --- cached descriptions -------------------------------------------
    def _facets(self):
        with self._lock:
            if self._facet_data is None:
                lines, rays = double_description(self.rays, self.ambient_dim)
                self._facet_data = _canonical(lines, rays, self.ambient_dim)
            return self._facet_data

    def _generators(self):
        facet_eqs, facet_ineqs = self._facets()
        with self._lock:
            if self._gen_data is None:
                ineqs = list(facet_ineqs) + list(facet_eqs) + [tuple(-x for x in e) for e in facet_eqs]
                lines, rays = double_description(ineqs, self.ambient_dim)
                self._gen_data = _canonical(lines, rays, self.ambient_dim)
            return self._gen_data

    def facets(self) -> list[IntVec]:
        """Inner normals: ``v`` is in the cone iff every functional is ``>= 0``.

        An equation ``e . v = 0`` contributes both ``e`` and ``-e``.
        """
        eqs, ineqs = self._facets()
        out = list(ineqs)
        for e in eqs:
            out.append(e)
            out.append(tuple(-x for x in e))
        return out

    def equations(self) -> list[IntVec]:
        return list(self._facets()[0])

    def proper_facets(self) -> list[IntVec]:
        return list(self._facets()[1])

    def lineality(self) -> list[IntVec]:
        return list(self._generators()[0])

    def extremal_rays(self) -> list[IntVec]:
        """Minimal generators.

        For a salient cone these are the extreme rays, each a positive multiple
        of one of the input generators.  Otherwise: the extreme rays of the
        part orthogonal to the lineality space, then ``+-`` each lineality
        basis vector.
        """
        lin, rays = self._generators()
        out = list(rays)
        for l in lin:
            out.append(l)
            out.append(tuple(-x for x in l))
        return out

    def dimension(self) -> int:
        return self.ambient_dim - len(self._facets()[0])

    # --- predicates ----------------------------------------------------
    def _vec(self, v) -> list[Fraction]:
        if isinstance(v, RingClass):
            if self.codim is not None and v.codim != self.codim:
                raise CodimMismatch(f"class of codimension {v.codim} against a codimension {self.codim} cone")
            v = v.coords()
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimMismatch(f"vector of length {len(v)} in a cone of dimension {self.ambient_dim}")
        return v

    def member(self, v) -> bool:
        v = self._vec(v)
        return all(dot(f, v) >= 0 for f in self.facets())

    def violated_facet(self, v) -> IntVec | None:
        v = self._vec(v)
        return next((f for f in self.facets() if dot(f, v) < 0), None)

    def interior_member(self, v) -> bool:
        """Strict interior relative to the ambient space."""
        v = self._vec(v)
        if not self.is_fulldim():
            return False
        return all(dot(f, v) > 0 for f in self.proper_facets())

    def is_fulldim(self) -> bool:
        return not self._facets()[0]

    def is_salient(self) -> bool:
        return not self.lineality()

    def contains(self, other: PolyCone) -> bool:
        self._same_space(other)
        return all(self.member(r) for r in other.rays)

    def _same_space(self, other: PolyCone) -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimMismatch("cones live in spaces of different dimension")

    def canonical(self) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
        """(lineality basis, extreme rays) in canonical order."""
        return self._generators()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyCone):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ambient_dim, self.canonical()))

    def __repr__(self) -> str:
        return f"PolyCone(dim={self.ambient_dim}, rays={list(self.extremal_rays())})"

    # --- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "basis": list(self.basis) if self.basis is not None else None,
            "codim": self.codim,
            "ambient_dim": self.ambient_dim,
            "rays": [list(r) for r in self.extremal_rays()],
            "facets": [list(f) for f in self.facets()],
        }

    @classmethod
    def from_json(cls, data: dict) -> PolyCone:
        return cls(data["ambient_dim"], data["rays"], basis=data.get("basis"), codim=data.get("codim"))


def hull(vectors, ambient_dim: int | None = None) -> PolyCone:
    return PolyCone.hull(vectors, ambient_dim)


def facets(cone: PolyCone) -> list[IntVec]:
    return cone.facets()


def member(v, cone: PolyCone) -> bool:
    return cone.member(v)


def interior_member(v, cone: PolyCone) -> bool:
    return cone.interior_member(v)


def is_salient(cone: PolyCone) -> bool:
    return cone.is_salient()


def is_fulldim(cone: PolyCone) -> bool:
    return cone.is_fulldim()


def extremal_rays(cone: PolyCone) -> list[IntVec]:
    return cone.extremal_rays()


def contains(a: PolyCone, b: PolyCone) -> bool:
    return a.contains(b)


def cone_equal(a: PolyCone, b: PolyCone) -> bool:
    a._same_space(b)
    return a == b


def dual(cone: PolyCone, pairing: Sequence[Sequence], basis: Sequence[str] | None = None,
         codim: int | None = None) -> PolyCone:
    """``{w : w . (P v) >= 0 for all generators v}``, returned by generators.

    ``P`` maps the cone's space to the dual coordinates: rows are indexed by
    the result's coordinates, columns by the cone's.
    """
    P = [[Fraction(x) for x in row] for row in pairing]
    if len(P) == 0 or any(len(row) != len(P) for row in P):
        raise SingularPairing("pairing matrix must be square")
    if len(P[0]) != cone.ambient_dim:
        raise DimMismatch("pairing matrix does not match the cone dimension")
    if det(P) == 0:
        raise SingularPairing("pairing matrix is singular")
    ineqs = [_int_vec(matvec(P, r)) for r in cone.rays]
    lines, rays = double_description(ineqs, len(P))
    lin, ext = _canonical(lines, rays, len(P))
    gens = list(ext) + list(lin) + [tuple(-x for x in l) for l in lin]
    return PolyCone(len(P), gens, basis=basis, codim=codim)


# ---------------------------------------------------------------------------
# Inertia


class Inertia(tuple):
    """``(n_plus, n_zero, n_minus)``."""

    def __new__(cls, n_plus: int, n_zero: int, n_minus: int):
        return super().__new__(cls, (n_plus, n_zero, n_minus))

    @property
    def n_plus(self) -> int:
        return self[0]

    @property
    def n_zero(self) -> int:
        return self[1]

    @property
    def n_minus(self) -> int:
        return self[2]

    def __repr__(self):
        return f"Inertia(n_plus={self[0]}, n_zero={self[1]}, n_minus={self[2]})"


def _sign_changes(coeffs: Sequence[Fraction]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia(M: Sequence[Sequence]) -> Inertia:
    """Eigenvalue sign counts of a symmetric rational matrix.

    Characteristic polynomial by Berkowitz, then Descartes' rule of signs,
    which is exact because the polynomial is real-rooted.
    """
    M = [[Fraction(x) for x in row] for row in M]
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotSymmetric("matrix is not square")
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
        raise NotSymmetric("matrix is not symmetric")
    p = berkowitz(M)  # leading coefficient first
    zero = 0
    while zero < n and p[n - zero] == 0:
        zero += 1
    pos = _sign_changes(p)
    # p(-x): coefficient of x^i picks up (-1)^i; entry k is x^(n-k).
    neg = _sign_changes([c * (-1) ** (n - k) for k, c in enumerate(p)])
    return Inertia(pos, zero, neg)


# ---------------------------------------------------------------------------


def degree_functional_witnesses(h_power: RingClass, eff_rays: Sequence[RingClass]) -> list[RingClass]:
    """Nonzero rays ``r`` with ``deg(h_power * r) <= 0``."""
    n = h_power.ring.dim
    out = []
    for r in eff_rays:
        if r.ring is not h_power.ring:
            raise RingMismatch("rays from a different ring")
        if r.codim + h_power.codim != n:
            raise CodimMismatch(f"ray codimension {r.codim} does not complement {h_power.codim}")
        if r.is_zero():
            continue
        if degree(h_power * r) <= 0:
            out.append(r)
    return out


def degree_functional_positive(h_power: RingClass, eff_rays: Sequence[RingClass]) -> bool:
    """True iff ``deg(h_power * r) > 0`` for every nonzero ray ``r``."""
    return not degree_functional_witnesses(h_power, eff_rays)
