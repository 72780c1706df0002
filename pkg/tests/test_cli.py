"""Command line interface: outputs, exit codes and determinism."""

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from poscones.cli import EXIT_PARSE, EXIT_SEMANTIC, EXIT_UNSUPPORTED, run
from poscones.cones import PolyCone

MODELS = Path(__file__).resolve().parent.parent / "models"
PLANDFLOP = str(MODELS / "plandflop.json")
G24 = str(MODELS / "g24.json")
P1_4 = str(MODELS / "p1_4.json")
GRAM = str(MODELS / "toric_shape_gram.json")


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    assert code == 0, text
    return json.loads(text)


def test_ring():
    js = call_json("--model", PLANDFLOP, "ring")
    assert js["dim"] == 3
    code, text = call("--model", PLANDFLOP, "ring")
    assert "pairing with codim 2: 0 1; 1 -1" in text


def test_eval_and_deg():
    js = call_json("--model", PLANDFLOP, "eval", "c{2}(Q)")
    assert js["class"] == "xi*f + xi^2" and js["coords"] == ["1", "1"]
    assert call_json("--model", PLANDFLOP, "deg", "xi^3")["degree"] == "-1"
    assert call_json("--model", PLANDFLOP, "deg", "xi^2*f")["degree"] == "1"
    assert call_json("--model", G24, "eval", "schur[1,1](Q)")["class"] == "s[1,1]"


def test_flags_after_subcommand():
    assert call("--model", G24, "deg", "s[1]^4", "--json") == call("deg", "s[1]^4", "--model", G24, "--json")


def test_cone_nef_round_trip():
    js = call_json("--model", PLANDFLOP, "cone", "nef", "--codim", "2")
    assert js["ray_classes"] == ["xi*f", "xi*f + xi^2"]
    assert js["salient"] and js["fulldim"]
    C = PolyCone.from_json(js)
    assert {tuple(r) for r in C.extremal_rays()} == {(1, 0), (1, 1)}


@pytest.mark.parametrize("which, rays", [
    ("eff", ["xi*f", "xi^2"]),
    ("pliant", ["xi*f", "xi*f + xi^2"]),
    ("ci", ["xi*f", "2*xi*f + xi^2"]),
])
def test_cones_plandflop(which, rays):
    js = call_json("--model", PLANDFLOP, "cone", which, "--codim", "2")
    assert sorted(js["ray_classes"]) == sorted(rays)


def test_member():
    js = call_json("--model", PLANDFLOP, "member", "nef", "xi*f", "--interior")
    assert js["member"] is False
    assert js["certificate"] == {"facet": [0, 1], "value": "0"}
    js = call_json("--model", PLANDFLOP, "member", "nef", "xi^2")
    assert js["member"] is False and js["certificate"]["value"] == "-1"
    js = call_json("--model", PLANDFLOP, "member", "nef", "xi^2+2*xi*f", "--interior")
    assert js["member"] is True and "facet_values" in js["certificate"]


def test_member_not_fulldim(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"kind": "proj_bundle_curve", "quotients": [[1, -1], [2, 0]],
                             "known_eff": {"1": ["f"]}}))
    js = call_json("--model", str(m), "member", "eff", "f", "--interior")
    assert js["member"] is False and js["certificate"]["reason"] == "cone is not full-dimensional"


def test_report():
    js = call_json("--model", PLANDFLOP, "report", "--codim", "2")
    assert js["ok"] is True
    status = {c["name"]: c["status"] for c in js["checks"]}
    assert status["ci = pl"] == "fails" and status["pl = nef"] == "holds"


def test_signature():
    js = call_json("--model", P1_4, "signature", "s[1]@s[1]@1@1")
    assert js["inertia"] == [1, 2, 1] and js["verdict"] == "unobstructed"
    js = call_json("--model", P1_4, "signature", "(s[1]@1@1@1+1@s[1]@1@1+1@1@s[1]@1+1@1@1@s[1])^2")
    assert js["inertia"] == [1, 0, 3]
    js = call_json("signature", "--matrix", GRAM)
    assert js["inertia"] == [3, 0, 1] and js["verdict"] == "obstructed"


@pytest.mark.parametrize("argv, code", [
    (["--model", PLANDFLOP, "eval", "xi+"], EXIT_PARSE),
    (["--model", PLANDFLOP, "frobnicate"], EXIT_PARSE),
    (["--model", PLANDFLOP, "cone", "nef"], EXIT_PARSE),
    (["eval", "xi"], EXIT_PARSE),
    (["--model", "/nonexistent.json", "ring"], EXIT_PARSE),
    (["--model", PLANDFLOP, "deg", "xi^2"], EXIT_SEMANTIC),
    (["--model", PLANDFLOP, "cone", "nef", "--codim", "9"], EXIT_SEMANTIC),
    (["--model", PLANDFLOP, "eval", "c{1}(Nope)"], EXIT_SEMANTIC),
    (["--model", PLANDFLOP, "member", "nef", "xi", "--codim", "2"], EXIT_SEMANTIC),
    (["--model", PLANDFLOP, "signature", "xi^2"], EXIT_SEMANTIC),
    (["--model", G24, "eval", "s[3]"], EXIT_SEMANTIC),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_unknown_model_field(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"kind": "grassmannian", "k": 2, "n": 4, "oops": 1}))
    assert call("--model", str(m), "ring")[0] == EXIT_PARSE


def test_unsupported_without_known_eff(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"kind": "proj_bundle_curve", "genus": 0, "quotients": [[1, -1], [2, 0]]}))
    assert call("--model", str(m), "cone", "eff", "--codim", "1")[0] == EXIT_UNSUPPORTED
    # the nef cone has a closed form and needs no Eff data
    assert call("--model", str(m), "cone", "nef", "--codim", "1")[0] == 0


def test_json_is_sorted_and_unicode():
    code, text = call("--model", P1_4, "eval", "s[1]@1@1@1", "--json")
    assert "⊗" in text
    data = json.loads(text)
    assert text.strip() == json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "poscones", "--model", PLANDFLOP, "deg", "xi^3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("-1")


@pytest.mark.parametrize("threads", ["1", "4"])
def test_thread_setting_does_not_change_output(threads):
    argv = [sys.executable, "-m", "poscones", "--model", PLANDFLOP, "--json", "report", "--codim", "2"]
    env = dict(os.environ, POSCONES_THREADS=threads)
    proc = subprocess.run(argv, capture_output=True, env=env, check=True)
    base = subprocess.run(argv, capture_output=True, check=True)
    assert proc.stdout == base.stdout
