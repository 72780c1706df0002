"""Positivity cones on the built-in models and the Hodge-index obstruction."""

import pytest
from hypothesis import given, strategies as st

from poscones.cones import PolyCone
from poscones.errors import CodimMismatch, MissingEff, NoGGBundles, RingMismatch
from poscones.grassmannian import GrassmannRing
from poscones.linalg import matmul, transpose
from poscones.positivity import (
    OBSTRUCTED,
    UNOBSTRUCTED,
    VarietyModel,
    ci_cone,
    containment_report,
    eff_cone,
    eff_nef_intersection,
    grassmannian_model,
    hodge_gram,
    hodge_obstruction,
    hodge_obstruction_matrix,
    interior_ci_check,
    nef_cone,
    nef_cone_from_eff,
    nef_divisors,
    pliant_cone,
    product_model,
    projbundle_model,
    schur_generators,
)
from poscones.projbundle import HNData
from poscones.ring import degree


def rays(cone):
    return {tuple(r) for r in cone.extremal_rays()}


class TestPliant:
    def test_g24_codim2(self, g24):
        G = g24.ring
        assert pliant_cone(g24, 2) == PolyCone.from_classes([G.sigma(2), G.sigma(1, 1)])

    @pytest.mark.parametrize("k", range(1, 5))
    def test_g24_equals_schubert_cone(self, g24, k):
        assert pliant_cone(g24, k) == eff_cone(g24, k)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_g25_equals_schubert_cone(self, g25, k):
        assert pliant_cone(g25, k) == eff_cone(g25, k)

    def test_plandflop_codim2_is_nef(self, plandflop):
        assert pliant_cone(plandflop, 2) == nef_cone(plandflop, 2)

    def test_codim0_is_the_unit(self, g24):
        assert rays(pliant_cone(g24, 0)) == {(1,)}

    def test_subregistry(self, g24):
        G = g24.ring
        # Q alone: s_lambda(Q) are the Schubert classes themselves
        assert pliant_cone(g24, 2, ["Q"]) == PolyCone.from_classes([G.sigma(2), G.sigma(1, 1)])

    def test_schur_generators_skip_zero(self, g24):
        gens = schur_generators(g24, 3)
        assert all(not g.is_zero() for g in gens)
        assert len(gens) == len(set(gens))

    def test_monotone_in_registry(self, plandflop):
        small = pliant_cone(plandflop, 2, ["F"])
        big = pliant_cone(plandflop, 2)
        assert big.contains(small)

    def test_non_gg_bundle_rejected(self, plandflop):
        with pytest.raises(NoGGBundles):
            pliant_cone(plandflop, 1, ["O1"])

    def test_empty_registry(self):
        G = GrassmannRing(2, 4)
        bare = VarietyModel(G)
        with pytest.raises(NoGGBundles):
            pliant_cone(bare, 1)

    def test_codim_out_of_range(self, g24):
        with pytest.raises(CodimMismatch):
            pliant_cone(g24, 5)
        with pytest.raises(CodimMismatch):
            pliant_cone(g24, -1)


class TestCI:
    def test_plandflop(self, plandflop):
        R = plandflop.ring
        ci = ci_cone(plandflop, 2, nef_divisors(plandflop))
        assert ci == PolyCone.from_classes([R.xi * R.f, R.xi ** 2 + R.xi * R.f * 2])

    def test_zero_products_dropped(self, plandflop):
        R = plandflop.ring
        ci = ci_cone(plandflop, 2, [R.f])
        assert ci.rays == ()

    def test_g24(self, g24):
        G = g24.ring
        ci = ci_cone(g24, 2, [G.sigma(1)])
        assert ci == PolyCone.from_classes([G.sigma(2) + G.sigma(1, 1)])

    def test_divisor_codim_checked(self, g24):
        with pytest.raises(CodimMismatch):
            ci_cone(g24, 2, [g24.ring.sigma(2)])

    def test_ring_checked(self, g24, plandflop):
        with pytest.raises(RingMismatch):
            ci_cone(g24, 2, [plandflop.ring.f])

    @pytest.mark.parametrize("k", range(1, 4))
    def test_ci_inside_pliant_g25(self, g25, k):
        assert pliant_cone(g25, k).contains(ci_cone(g25, k, nef_divisors(g25)))


class TestNef:
    def test_from_eff_k1(self, plandflop):
        R = plandflop.ring
        assert nef_cone_from_eff(plandflop, 1) == PolyCone.from_classes([R.f, R.xi + R.f])

    @pytest.mark.parametrize("k", [1, 2])
    def test_two_routes_agree(self, plandflop, k):
        assert nef_cone_from_eff(plandflop, k) == nef_cone(plandflop, k)

    def test_missing_eff(self):
        m = projbundle_model(HNData(((1, -1), (2, 0))))
        with pytest.raises(MissingEff):
            nef_cone_from_eff(m, 1)
        with pytest.raises(MissingEff):
            eff_cone(m, 1)
        # the closed form still works
        assert rays(nef_cone(m, 1)) == {(1, 0), (1, 1)}

    def test_grassmannian_nef_is_schubert(self, g24):
        for k in range(g24.dim + 1):
            assert nef_cone(g24, k) == eff_cone(g24, k)

    def test_eff_nef_intersection(self, plandflop):
        both = eff_nef_intersection(plandflop, 2)
        assert eff_cone(plandflop, 2).contains(both)
        assert nef_cone(plandflop, 2).contains(both)
        # Nef^2 sits inside Eff_1 here
        assert both == nef_cone(plandflop, 2)


class TestReport:
    @pytest.mark.parametrize("k", range(0, 5))
    def test_g24_all_hold(self, g24, k):
        rep = containment_report(g24, k)
        assert rep.ok()
        for name in ("ci ⊆ pl", "pl ⊆ nef", "pl ⊆ eff", "pl = eff", "annotation pl=eff=nef"):
            assert rep.status(name) == "holds", name

    def test_plandflop_codim2(self, plandflop):
        rep = containment_report(plandflop, 2)
        assert rep.ok()
        assert rep.status("ci ⊆ pl") == "holds"
        assert rep.status("ci = pl") == "fails"
        assert rep.status("pl = nef") == "holds"
        assert rep.status("nef ⊆ eff") == "holds"
        assert rep.status("annotation nef=upsef") == "recorded"

    def test_failing_equality_has_witness(self, plandflop):
        rep = containment_report(plandflop, 2)
        check = next(c for c in rep.checks if c.name == "ci = pl")
        assert check.witness["class"] == "xi*f + xi^2"

    def test_without_registry(self):
        G = GrassmannRing(2, 4)
        eff = {k: PolyCone.from_classes([G.gen(m) for m in G.basis(k)]) for k in range(5)}
        rep = containment_report(VarietyModel(G, known_eff=eff), 2)
        assert rep.status("pl") == "unavailable"
        assert rep.status("ci ⊆ pl") == "unavailable"
        assert rep.status("nef = eff") == "holds"

    def test_json_shape(self, g24):
        js = containment_report(g24, 1).to_json()
        assert js["codim"] == 1
        assert {"ci", "pl", "nef", "eff"} <= set(js["cones"])


class TestInteriorCI:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_g24_sigma1_power(self, g24, k):
        assert interior_ci_check(g24, [g24.ring.sigma(1)], k)

    def test_g25(self, g25):
        assert interior_ci_check(g25, [g25.ring.sigma(1)], 2)

    def test_plandflop_xif_not_interior(self, plandflop):
        R = plandflop.ring
        assert not interior_ci_check(plandflop, [R.xi, R.f], 2)
        assert not nef_cone(plandflop, 2).interior_member(R.xi * R.f)

    def test_plandflop_ample_is_interior(self, plandflop):
        R = plandflop.ring
        assert interior_ci_check(plandflop, [R.xi + R.f * 2], 2)

    def test_wrong_count(self, g24):
        s1 = g24.ring.sigma(1)
        with pytest.raises(CodimMismatch):
            interior_ci_check(g24, [s1, s1], 3)
        with pytest.raises(CodimMismatch):
            interior_ci_check(g24, [g24.ring.sigma(2)], 1)


class TestHodge:
    def test_p1_fourth_mixed(self, p1_4):
        R = p1_4.ring
        alpha = R.gen("s[1]⊗s[1]⊗1⊗1")
        inert, verdict = hodge_obstruction(p1_4, alpha)
        assert tuple(inert) == (1, 2, 1)
        assert verdict == UNOBSTRUCTED

    def test_p1_fourth_ample_square(self, p1_4):
        R = p1_4.ring
        h = sum((R.gen(m) for m in R.basis(1)[1:]), R.gen(R.basis(1)[0]))
        inert, verdict = hodge_obstruction(p1_4, h * h)
        assert tuple(inert) == (1, 0, 3)
        assert verdict == UNOBSTRUCTED

    def test_matrix_mode(self):
        inert, verdict = hodge_obstruction_matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
        assert tuple(inert) == (3, 0, 1)
        assert verdict == OBSTRUCTED

    def test_verdict_threshold(self):
        assert hodge_obstruction_matrix([[1, 0], [0, 1]])[1] == OBSTRUCTED
        assert hodge_obstruction_matrix([[1, 0], [0, 0]])[1] == UNOBSTRUCTED

    def test_gram_entries(self, p1_4):
        R = p1_4.ring
        alpha = R.gen("s[1]⊗s[1]⊗1⊗1")
        G = hodge_gram(p1_4, alpha)
        assert G[2][3] == G[3][2] == 1
        assert all(G[i][i] == 0 for i in range(4))

    def test_codim_mismatch(self, p1_4, g24):
        R = p1_4.ring
        with pytest.raises(CodimMismatch):
            hodge_obstruction(p1_4, R.gen(R.basis(1)[0]))
        # G(2,4) has dimension 4 but only one divisor; still a valid 1x1 Gram
        inert, _ = hodge_obstruction(g24, g24.ring.sigma(1) ** 2)
        assert tuple(inert) == (1, 0, 0)

    def test_dimension_too_small(self):
        G = GrassmannRing(1, 3)
        with pytest.raises(CodimMismatch):
            hodge_obstruction(G, G.one())

    def test_plandflop_hodge_index(self, plandflop):
        R = plandflop.ring
        # an ample class gives signature (1, 0, rho - 1)
        inert, verdict = hodge_obstruction(plandflop, R.xi + R.f * 2)
        assert tuple(inert) == (1, 0, 1)
        assert verdict == UNOBSTRUCTED


@given(st.integers(1, 5), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_hodge_invariant_under_scaling(c, coeffs):
    model = _P1_4()
    R = model.ring
    alpha = R.from_coords(2, coeffs + [0, 0])
    assert hodge_obstruction(model, alpha * c)[0] == hodge_obstruction(model, alpha)[0]


@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_gram_transforms_by_congruence(coeffs):
    # pairing over a different divisor basis B = A^T G A has the same inertia
    model = _P1_4()
    alpha = model.ring.from_coords(2, coeffs)
    G = hodge_gram(model, alpha)
    A = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    divs = [model.ring.from_coords(1, col) for col in transpose(A)]
    direct = [[degree(a * b * alpha) for b in divs] for a in divs]
    assert direct == matmul(matmul(transpose(A), G), A)
    assert hodge_obstruction_matrix(direct)[0] == hodge_obstruction(model, alpha)[0]


_cache = {}


def _P1_4():
    # hypothesis tests cannot take function-scoped fixtures
    if "m" not in _cache:
        _cache["m"] = product_model([(1, 2)] * 4)
    return _cache["m"]


def test_grassmannian_model_registry():
    m = grassmannian_model(2, 5)
    assert set(m.bundles) == {"Q", "R"}
    assert [b.name for b in m.gg_bundles()] == ["Q", "R"]
