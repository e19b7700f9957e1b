import json
import subprocess
import sys
from pathlib import Path

import pytest

from axiomlab import axioms as ax
from axiomlab.cli import RunConfig, main
from axiomlab.rules import get_rule

from conftest import validate

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_separable(capsys):
    code, out, _ = run(capsys, "enumerate", "--domain", "separable", "--json", "--list")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 8 and len(doc["preferences"]) == 8


def test_enumerate_all_and_universal(capsys):
    code, out, _ = run(capsys, "enumerate", "--domain", "all")
    assert code == 0 and "24 preferences" in out
    code, out, _ = run(capsys, "enumerate", "--domain", "universal", "--alternatives", "3", "--json")
    assert json.loads(out)["count"] == 6


def test_enumerate_cap_error(capsys):
    code, _, err = run(capsys, "enumerate", "--domain", "all", "--objects", "4")
    assert code == 2 and "error" in err


def test_enumerate_cap_override(capsys):
    code, _, _ = run(capsys, "enumerate", "--domain", "all", "--cap", "10")
    assert code == 2


@pytest.mark.parametrize("fixture, rule, expected", [
    ("fgt_s_sx.json", "f_gt", "{x}"),
    ("quota1_x_y.json", "quota1", "{x,y}"),
    ("fmin_3_7.json", "f_min", "b"),
])
def test_eval_fixtures(capsys, fixture, rule, expected):
    code, out, _ = run(capsys, "eval", "--rule", rule, "--profile", str(FIXTURES / fixture))
    assert code == 0 and out.strip() == expected


def test_eval_json_output(capsys):
    code, out, _ = run(capsys, "eval", "--rule", "f_gt", "--profile", str(FIXTURES / "fgt_s_sx.json"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["outcome"] == ["x"]


def test_eval_outside_domain(capsys):
    code, _, err = run(capsys, "eval", "--rule", "f_gt", "--profile", str(FIXTURES / "nonseparable.json"))
    assert code == 2 and err


def test_fixtures_validate_against_profile_schema():
    for path in FIXTURES.glob("*.json"):
        validate(json.loads(path.read_text()), "profile")


def test_check_pass_and_fail_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "--rule", "f_gt", "--axiom", "participation", "--json")
    assert code == 0
    validate(json.loads(out), "check_report")
    code, out, _ = run(capsys, "check", "--rule", "f_star", "--axiom", "participation", "--objects", "3", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] == "fail"
    validate(doc, "check_report")
    assert ax.replay_json(doc, get_rule("f_star", 3))


def test_check_all_axioms(capsys):
    code, out, _ = run(capsys, "check", "--rule", "f_min", "--axiom", "all", "--json", "--nmax", "2", "--nclone", "1")
    doc = json.loads(out)
    validate(doc, "check_report")
    assert code == 1
    assert [r["axiom"] for r in doc["reports"]] == list(ax.AXIOMS)
    for r in doc["reports"]:
        if r["verdict"] == "fail":
            assert ax.replay_json(r, get_rule("f_min"))
    # neutrality is skipped on the separable domain, which relabelings do not preserve
    _, out, _ = run(capsys, "check", "--rule", "f_gt", "--axiom", "all", "--json", "--nmax", "2", "--nclone", "1")
    assert "neutrality" not in [r["axiom"] for r in json.loads(out)["reports"]]


def test_check_markdown(capsys):
    code, out, _ = run(capsys, "check", "--rule", "f_tilde", "--axiom", "tops_only", "--format", "markdown")
    assert code == 1 and "| tops_only | fail |" in out


def test_check_universal_domain(capsys):
    code, _, _ = run(capsys, "check", "--rule", "f_min", "--axiom", "neutrality", "--alternatives", "3")
    assert code == 0


def test_check_unknown_rule(capsys):
    code, _, err = run(capsys, "check", "--rule", "borda", "--axiom", "fnp")
    assert code == 2 and "borda" in err


def test_verify_confirmed_and_precondition(capsys, tmp_path):
    target = tmp_path / "thm1.json"
    code, _, _ = run(capsys, "verify", "--theorem", "thm1", "--json", "--out", str(target))
    doc = json.loads(target.read_text())
    assert code == 0 and doc["outcome"] == "confirmed"
    validate(doc, "verdict_report")
    code, out, _ = run(capsys, "verify", "--theorem", "lemma1", "--rule", "f_min", "--json")
    assert code == 2
    doc = json.loads(out)
    assert doc["error"] == "precondition-not-met"
    validate(doc["check"], "check_report")


def test_verify_refuted_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "prop2", "--json")
    assert code == 1 and json.loads(out)["outcome"] == "refuted-with-witness"


def test_verify_inconclusive_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "thm1", "--ceiling", "1")
    assert code == 2 and "inconclusive-at-bounds" in out


def test_verify_remark2_markdown(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "remark2", "--format", "markdown")
    assert code == 0 and out.startswith("### remark2: **confirmed**")


def test_matrix_small_bounds(capsys):
    code, out, _ = run(capsys, "matrix", "--nmax", "2", "--nclone", "1", "--format", "markdown")
    assert code == 0
    assert "| rule | ontoness | tops_only | fnp | participation | object_neutrality |" in out


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("check", objects=0)
    with pytest.raises(KeyError):
        RunConfig("check", rules=["borda"])
    assert RunConfig("check").bounds == ax.CheckBounds(3, 2)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "axiomlab.cli", "enumerate", "--domain", "separable"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "8 preferences" in proc.stdout
