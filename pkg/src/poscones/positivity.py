"""Model varieties and their positive cones.

A :class:`VarietyModel` bundles a numerical ring, a registry of vector
bundles, optional literal pseudoeffective cones and annotations recording
known cone identities.  Pliant cones are computed relative to the registry:
they are inner approximations of the true pliant cone, which quantifies over
every globally generated bundle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import projbundle
from .cones import Inertia, PolyCone, _canonical, double_description, dual, inertia
from .errors import CodimMismatch, MissingEff, NoGGBundles, RingMismatch, Unsupported
from .grassmannian import GrassmannRing, ProductRing, tautological_bundles
from .ring import NumericalRing, RingClass, degree, format_class, pairing_matrix
from .schur import VectorBundle, partitions, schur_class

OBSTRUCTED = "obstructed"
UNOBSTRUCTED = "unobstructed"


@dataclass
class VarietyModel:
    ring: NumericalRing
    bundles: dict[str, VectorBundle] = field(default_factory=dict)
    known_eff: dict[int, PolyCone] = field(default_factory=dict)
    annotations: dict[int, list[str]] = field(default_factory=dict)
    kind: str = "custom"
    hn: projbundle.HNData | None = None

    def __post_init__(self):
        n = self.ring.dim
        self.known_eff.setdefault(0, PolyCone.from_classes([self.ring.one()]))
        self.known_eff.setdefault(n, PolyCone.from_classes([self.ring.point()]))
        for k, cone in self.known_eff.items():
            if cone.ambient_dim != len(self.ring.basis(k)):
                raise CodimMismatch(f"known_eff in codimension {k} has the wrong dimension")
        for b in self.bundles.values():
            if b.ring is not self.ring:
                raise RingMismatch(f"bundle {b.name} lives in another ring")

    @property
    def dim(self) -> int:
        return self.ring.dim

    def register(self, bundle: VectorBundle) -> None:
        if bundle.ring is not self.ring:
            raise RingMismatch(f"bundle {bundle.name} lives in another ring")
        self.bundles[bundle.name] = bundle

    def gg_bundles(self) -> list[VectorBundle]:
        return [b for _, b in sorted(self.bundles.items()) if b.globally_generated]

    def class_of(self, coords: Sequence, k: int) -> RingClass:
        return self.ring.from_coords(k, coords)


# ---------------------------------------------------------------------------
# Built-in models


def grassmannian_model(k: int, n: int) -> VarietyModel:
    ring = GrassmannRing(k, n)
    Q, R = tautological_bundles(k, n, ring)
    eff = {c: PolyCone.from_classes([ring.gen(m) for m in ring.basis(c)]) for c in range(ring.dim + 1)}
    ann = {c: ["pl=eff=nef"] for c in range(ring.dim + 1)}
    return VarietyModel(ring, {"Q": Q, "R": R}, eff, ann, kind="grassmannian")


def product_model(factors: Sequence[tuple[int, int]]) -> VarietyModel:
    """Product of Grassmannians G(k_i, n_i); bundles ``Q1, R1, Q2, ...`` are pullbacks."""
    rings = [GrassmannRing(k, n) for k, n in factors]
    ring = ProductRing(rings)
    bundles = {}
    for i, (g, (k, n)) in enumerate(zip(rings, factors), start=1):
        Q, R = tautological_bundles(k, n, g)
        bundles[f"Q{i}"] = ring.pullback_bundle(i - 1, Q, f"Q{i}")
        bundles[f"R{i}"] = ring.pullback_bundle(i - 1, R, f"R{i}")
    eff = {c: PolyCone.from_classes([ring.gen(m) for m in ring.basis(c)]) for c in range(ring.dim + 1)}
    ann = {c: ["pl=eff=nef"] for c in range(ring.dim + 1)}
    return VarietyModel(ring, bundles, eff, ann, kind="product")


def projbundle_model(hn: projbundle.HNData, known_eff: dict[int, Sequence[RingClass]] | None = None,
                     ring: projbundle.ProjBundleRing | None = None) -> VarietyModel:
    ring = ring or projbundle.ProjBundleRing(hn)
    bundles = projbundle.builtin_bundles(ring)
    eff = {c: PolyCone.from_classes(list(v), ring=ring, codim=c) for c, v in (known_eff or {}).items()}
    ann = {k: ["nef=upsef"] for k in range(1, ring.dim)}
    if hn.genus == 0:
        for k in range(1, ring.dim):
            ann[k].append("bpf=nef")
    return VarietyModel(ring, bundles, eff, ann, kind="proj_bundle_curve", hn=hn)


def plandflop_model() -> VarietyModel:
    """P(O + O + O(-1)) over P^1 with its literal Eff cones."""
    ring = projbundle.ProjBundleRing(projbundle.plandflop_hn())
    return projbundle_model(ring.hn, projbundle.known_eff_plandflop(ring), ring)


# ---------------------------------------------------------------------------
# Cones


def _check_k(model: VarietyModel, k: int) -> None:
    if not 0 <= k <= model.dim:
        raise CodimMismatch(f"codimension {k} outside [0, {model.dim}]")


def _classes_of(cone: PolyCone, ring: NumericalRing, k: int) -> list[RingClass]:
    return [ring.from_coords(k, r) for r in cone.extremal_rays()]


def schur_generators(model: VarietyModel, w: int, bundles: Sequence[VectorBundle] | None = None) -> list[RingClass]:
    """Nonzero ``s_lambda(E)`` of weight ``w`` over the globally generated registry."""
    out: list[RingClass] = []
    for E in bundles if bundles is not None else model.gg_bundles():
        for lam in partitions(w, max_part=E.rank):
            c = schur_class(lam, E)
            if not c.is_zero() and c not in out:
                out.append(c)
    return out


def pliant_cone(model: VarietyModel, k: int, bundles: Sequence[str] | None = None) -> PolyCone:
    """Cone over all weight ``k`` monomials in Schur classes of the registry.

    ``bundles`` restricts to a subset of names; every listed bundle must be
    globally generated.
    """
    _check_k(model, k)
    if bundles is None:
        reg = model.gg_bundles()
    else:
        reg = [model.bundles[b] for b in bundles]
        bad = [b.name for b in reg if not b.globally_generated]
        if bad:
            raise NoGGBundles(f"not globally generated: {', '.join(bad)}")
    if not reg:
        raise NoGGBundles("no globally generated bundles registered")
    ring = model.ring
    singles = {w: schur_generators(model, w, reg) for w in range(1, k + 1)}
    gens: dict[int, list[RingClass]] = {0: [ring.one()]}
    for w in range(1, k + 1):
        prods = []
        for j in range(1, w + 1):
            for s in singles[j]:
                for m in gens[w - j]:
                    p = s * m
                    if not p.is_zero():
                        prods.append(p)
        cone = PolyCone.from_classes(prods, ring=ring, codim=w)
        gens[w] = _classes_of(cone, ring, w)
    return PolyCone.from_classes(gens[k], ring=ring, codim=k)


def ci_cone(model: VarietyModel, k: int, nef_divisor_rays: Sequence[RingClass]) -> PolyCone:
    """Cone over all ``k``-fold products of the given divisor classes."""
    _check_k(model, k)
    rays = list(nef_divisor_rays)
    for r in rays:
        if r.ring is not model.ring:
            raise RingMismatch("divisor from another ring")
        if r.codim != 1:
            raise CodimMismatch(f"divisor rays must have codimension 1, got {r.codim}")
    prods = []
    for combo in itertools.combinations_with_replacement(range(len(rays)), k):
        p = model.ring.one()
        for i in combo:
            p = p * rays[i]
        if not p.is_zero():
            prods.append(p)
    return PolyCone.from_classes(prods, ring=model.ring, codim=k)


def nef_cone_from_eff(model: VarietyModel, k: int) -> PolyCone:
    """Dual of the known pseudoeffective cone in codimension ``n - k``."""
    _check_k(model, k)
    n = model.dim
    if n - k not in model.known_eff:
        raise MissingEff(f"no known pseudoeffective cone in codimension {n - k}")
    return dual(model.known_eff[n - k], pairing_matrix(model.ring, k), basis=model.ring.basis(k), codim=k)


def nef_cone(model: VarietyModel, k: int) -> PolyCone:
    """Nef cone: closed form for projective bundles over curves, otherwise dual of Eff."""
    _check_k(model, k)
    if model.kind == "proj_bundle_curve" and 1 <= k <= model.dim - 1:
        return projbundle.nef_cone(model.ring, k)
    return nef_cone_from_eff(model, k)


def eff_cone(model: VarietyModel, k: int) -> PolyCone:
    _check_k(model, k)
    if k not in model.known_eff:
        raise MissingEff(f"no known pseudoeffective cone in codimension {k}")
    return model.known_eff[k]


def nef_divisors(model: VarietyModel) -> list[RingClass]:
    return _classes_of(nef_cone(model, 1), model.ring, 1)


def eff_nef_intersection(model: VarietyModel, k: int) -> PolyCone:
    """``Eff^k`` intersected with ``Nef^k``; this is *not* claimed to be any other cone."""
    E, N = eff_cone(model, k), nef_cone(model, k)
    ineqs = E.facets() + N.facets()
    lines, rays = double_description(ineqs, E.ambient_dim)
    lin, ext = _canonical(lines, rays, E.ambient_dim)
    gens = list(ext) + list(lin) + [tuple(-x for x in l) for l in lin]
    return PolyCone(E.ambient_dim, gens, basis=model.ring.basis(k), codim=k)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class Check:
    name: str
    status: str  # "holds", "fails" or "unavailable"
    theorem: bool
    witness: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "theorem": self.theorem}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    k: int
    checks: list[Check]
    cones: dict[str, PolyCone]

    def ok(self) -> bool:
        """No theorem-backed containment failed."""
        return all(c.status != "fails" for c in self.checks if c.theorem)

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "codim": self.k,
            "checks": [c.to_json() for c in self.checks],
            "cones": {name: cone.to_json() for name, cone in sorted(self.cones.items())},
        }


def _containment(name: str, A: PolyCone, B: PolyCone, ring: NumericalRing, k: int, theorem: bool) -> Check:
    for r in A.extremal_rays():
        f = B.violated_facet(r)
        if f is not None:
            w = {"ray": list(r), "class": format_class(ring.from_coords(k, r)), "facet": list(f)}
            return Check(name, "fails", theorem, w)
    return Check(name, "holds", theorem)


def _equality(name: str, A: PolyCone, B: PolyCone, ring, k) -> Check:
    for X, Y in ((A, B), (B, A)):
        c = _containment(name, X, Y, ring, k, False)
        if c.status == "fails":
            return c
    return Check(name, "holds", False)


def containment_report(model: VarietyModel, k: int) -> Report:
    """Check ``CI ⊆ pl ⊆ nef`` and ``pl ⊆ eff``, plus informational equalities.

    The containments are theorems, so a failure flags a modelling error.
    Equalities and annotations are reported as comparisons.
    """
    _check_k(model, k)
    ring = model.ring
    cones: dict[str, PolyCone] = {}
    checks: list[Check] = []
    try:
        cones["pl"] = pliant_cone(model, k)
    except NoGGBundles:
        checks.append(Check("pl", "unavailable", False, detail="no globally generated bundles registered"))
    for name, fn in (("nef", nef_cone), ("eff", eff_cone)):
        try:
            cones[name] = fn(model, k)
        except (MissingEff, Unsupported) as exc:
            checks.append(Check(name, "unavailable", False, detail=str(exc)))
    try:
        cones["ci"] = ci_cone(model, k, nef_divisors(model))
    except (MissingEff, Unsupported) as exc:
        checks.append(Check("ci", "unavailable", False, detail=str(exc)))

    def have(*names):
        return all(n in cones for n in names)

    for a, b, theorem in (("ci", "pl", True), ("pl", "nef", True), ("pl", "eff", True), ("ci", "nef", True)):
        name = f"{a} ⊆ {b}"
        if have(a, b):
            checks.append(_containment(name, cones[a], cones[b], ring, k, theorem))
        else:
            checks.append(Check(name, "unavailable", theorem))
    for a, b in (("ci", "pl"), ("pl", "nef"), ("pl", "eff"), ("nef", "eff")):
        name = f"{a} = {b}"
        if have(a, b):
            checks.append(_equality(name, cones[a], cones[b], ring, k))
        else:
            checks.append(Check(name, "unavailable", False))
    if have("nef", "eff"):
        checks.append(_containment("nef ⊆ eff", cones["nef"], cones["eff"], ring, k, False))
    for ann in model.annotations.get(k, []):
        names = ann.split("=")
        if all(n in cones for n in names):
            ok = all(cones[names[0]] == cones[n] for n in names[1:])
            checks.append(Check(f"annotation {ann}", "holds" if ok else "fails", True))
        else:
            checks.append(Check(f"annotation {ann}", "recorded", False, detail="not computed from definitions"))
    return Report(k, checks, cones)


def interior_ci_check(model: VarietyModel, ample_rays: Sequence[RingClass], k: int) -> bool:
    """Is ``h_1 * ... * h_k`` in the interior of the pliant cone?

    A single ray is raised to the ``k``-th power.
    """
    rays = list(ample_rays)
    if len(rays) == 1:
        rays = rays * k
    if len(rays) != k:
        raise CodimMismatch(f"need 1 or {k} divisor classes, got {len(rays)}")
    p = model.ring.one()
    for h in rays:
        if h.codim != 1:
            raise CodimMismatch("ample classes must be divisors")
        p = p * h
    return pliant_cone(model, k).interior_member(p)


# ---------------------------------------------------------------------------
# Hodge index obstruction


def hodge_gram(model_or_ring, alpha: RingClass) -> list[list[Fraction]]:
    """``G[i][j] = deg(D_i * D_j * alpha)`` over the divisor basis."""
    ring = model_or_ring.ring if isinstance(model_or_ring, VarietyModel) else model_or_ring
    if alpha.ring is not ring:
        raise RingMismatch("alpha lives in another ring")
    n = ring.dim
    if n < 3:
        raise CodimMismatch("the obstruction needs dimension at least 3")
    if alpha.codim != n - 2:
        raise CodimMismatch(f"alpha must have codimension {n - 2}, got {alpha.codim}")
    divs = [ring.gen(m) for m in ring.basis(1)]
    return [[degree(a * b * alpha) for b in divs] for a in divs]


def verdict_for(inert: Inertia) -> str:
    """``obstructed`` iff at least two positive eigenvalues.

    Only that direction is a certificate: with ``n_plus <= 1`` nothing is
    concluded.
    """
    return OBSTRUCTED if inert.n_plus >= 2 else UNOBSTRUCTED


def hodge_obstruction(model_or_ring, alpha: RingClass) -> tuple[Inertia, str]:
    inert = inertia(hodge_gram(model_or_ring, alpha))
    return inert, verdict_for(inert)


def hodge_obstruction_matrix(M: Sequence[Sequence]) -> tuple[Inertia, str]:
    """Raw-matrix mode: the Gram matrix is given directly."""
    inert = inertia(M)
    return inert, verdict_for(inert)
