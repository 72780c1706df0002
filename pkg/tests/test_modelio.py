"""Model documents: shipped files, validation and bundle definitions."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from poscones.cones import PolyCone
from poscones.errors import InvalidHN, ParseError, UnboundSymbol
from poscones.modelio import cone_from_json, cone_to_json, load_matrix, load_model, model_from_document, parse_rational
from poscones.positivity import containment_report, nef_cone_from_eff, pliant_cone
from poscones.ring import degree

MODELS = Path(__file__).resolve().parent.parent / "models"
PLANDFLOP = {"kind": "proj_bundle_curve", "genus": 0, "quotients": [[1, -1], [2, 0]]}


@pytest.mark.parametrize("name", ["plandflop", "g24", "g25", "g36", "p1_4", "g24_x_p1"])
def test_shipped_models_load(name):
    m = load_model(MODELS / f"{name}.json")
    assert m.ring.dim >= 1
    assert containment_report(m, 1).ok()


def test_plandflop_file_matches_builtin(plandflop):
    m = load_model(MODELS / "plandflop.json")
    R = m.ring
    assert degree(R.xi ** 3) == -1
    for k in (1, 2):
        assert m.known_eff[k] == plandflop.known_eff[k]
    assert nef_cone_from_eff(m, 1) == PolyCone.from_classes([R.f, R.xi + R.f])


def test_shipped_matrix():
    M = load_matrix(MODELS / "toric_shape_gram.json")
    assert M[3][3] == -1 and len(M) == 4


@pytest.mark.parametrize("doc", [
    {**PLANDFLOP, "colour": "red"},
    {"kind": "grassmannian", "k": 2, "n": 4, "extra": 1},
    {"kind": "product", "factors": [{"k": 1, "n": 2, "m": 3}]},
    {"kind": "grassmannian", "k": 2, "n": 4, "bundles": [{"name": "L", "rank": 1, "chern": ["s[1]"], "shade": 1}]},
    {"kind": "grassmannian", "k": 2, "n": 4,
     "bundles": [{"name": "L", "rank": 1, "chern": ["s[1]"], "flags": {"shiny": True}}]},
])
def test_unknown_fields_rejected(doc):
    with pytest.raises(ParseError, match="unknown field"):
        model_from_document(doc)


@pytest.mark.parametrize("doc", [
    {"kind": "variety"},
    {"kind": "grassmannian", "k": "2", "n": 4},
    {"kind": "grassmannian", "k": True, "n": 4},
    {"kind": "product", "factors": []},
    {"kind": "proj_bundle_curve", "quotients": [[1]]},
    {**PLANDFLOP, "known_eff": {"one": ["f"]}},
    {**PLANDFLOP, "known_eff": {"1": [3]}},
    {**PLANDFLOP, "bundles": [{"name": "2bad", "rank": 1}]},
    {**PLANDFLOP, "bundles": [{"name": "L", "rank": 1, "chern": ["xi", "xi^2"]}]},
])
def test_malformed_documents(doc):
    with pytest.raises(ParseError):
        model_from_document(doc)


def test_invalid_hn_is_semantic():
    with pytest.raises(InvalidHN):
        model_from_document({"kind": "proj_bundle_curve", "quotients": [[1, 0], [1, 0]]})


def test_bundle_definition_joins_registry():
    doc = {"kind": "grassmannian", "k": 2, "n": 4,
           "bundles": [{"name": "L", "rank": 1, "chern": ["s[1]"], "flags": {"globally_generated": True}}]}
    m = model_from_document(doc)
    assert m.bundles["L"].c(1) == m.ring.sigma(1)
    assert m.bundles["L"].globally_generated
    assert pliant_cone(m, 2, ["L"]) == PolyCone.from_classes([m.ring.sigma(1) ** 2])


def test_bundle_may_refer_to_builtins():
    doc = {**PLANDFLOP, "bundles": [{"name": "T", "rank": 2, "chern": ["c{1}(Q)", "c{2}(Q)"]}]}
    m = model_from_document(doc)
    assert m.bundles["T"].total_chern == m.bundles["Q"].total_chern


def test_unbound_bundle_in_document():
    with pytest.raises(UnboundSymbol):
        model_from_document({**PLANDFLOP, "known_eff": {"1": ["c{1}(Nope)"]}})


def test_coordinate_known_eff():
    m = model_from_document({**PLANDFLOP, "known_eff": {"1": [[1, 0], ["1/2", "1/2"]]}})
    R = m.ring
    assert m.known_eff[1] == PolyCone.from_classes([R.f, R.xi + R.f])


def test_annotations_are_appended():
    m = model_from_document({**PLANDFLOP, "annotations": {"1": ["pl=nef"]}})
    assert "pl=nef" in m.annotations[1]
    with pytest.raises(ParseError):
        model_from_document({**PLANDFLOP, "annotations": {"1": "pl=nef"}})


@pytest.mark.parametrize("x, v", [(3, Fraction(3)), ("-2/6", Fraction(-1, 3)), (" 5 ", Fraction(5))])
def test_parse_rational(x, v):
    assert parse_rational(x) == v


@pytest.mark.parametrize("x", [True, 1.5, "a/b", None, [1]])
def test_parse_rational_rejects(x):
    with pytest.raises(ParseError):
        parse_rational(x)


def test_files(tmp_path):
    with pytest.raises(ParseError):
        load_model(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_model(bad)
    arr = tmp_path / "arr.json"
    arr.write_text(json.dumps([1, 2]))
    with pytest.raises(ParseError):
        load_model(arr)
    with pytest.raises(ParseError):
        load_matrix(arr)


def test_cone_json_helpers():
    C = PolyCone(2, [(1, 0), (1, 1)])
    assert cone_from_json(cone_to_json(C)) == C
    with pytest.raises(ParseError):
        cone_from_json({})
