import itertools
import json
import math

import pytest

from axiomlab import axioms as ax
from axiomlab import verify as vf
from axiomlab.errors import PreconditionError
from axiomlab.prefcore import Preference, is_separable, preference_to_json, separable_plus, subsets, subsets_domain
from axiomlab.rules import get_rule, tops_only_extension

from conftest import validate


def _stable(report):
    doc = report.to_json()
    doc.pop("wall_time")
    return json.dumps(doc, sort_keys=True)


# --- clone invariance ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["quota1", "quota_unanimous", "f_gt", "f_geq", "f_const"])
@pytest.mark.parametrize("fn", [vf.verify_lemma1, vf.verify_prop1])
def test_clone_invariance_confirmed(fn, name):
    report = fn(get_rule(name), ax.CheckBounds(3, 1))
    assert report.outcome == vf.CONFIRMED
    assert report.artifacts["moves_checked"] > 0
    validate(report.to_json(), "verdict_report")


@pytest.mark.parametrize("fn", [vf.verify_lemma1, vf.verify_prop1])
def test_clone_invariance_needs_preconditions(fn):
    with pytest.raises(PreconditionError) as info:
        fn(get_rule("f_min"))
    assert info.value.result is not None and not info.value.result.passed


def test_clone_scan_finds_non_invariant_rule():
    # a dictatorship of voter 1 changes when a clone of voter 2 replaces voter 1
    f = get_rule("f_min", alternatives=2)
    _, bad = vf._clone_scan(f, ax.CheckBounds(3, 1), f.domain, swap=True)
    assert bad


# --- anonymity from FNP and participation --------------------------------------------------


@pytest.fixture(scope="module")
def prop2():
    return vf.verify_prop2()


def test_prop2_catalog_has_no_violators(prop2):
    assert prop2.artifacts["catalog_violators"] == []
    assert all(v["consistent"] for v in prop2.artifacts["remark1"].values())


def test_prop2_two_id_scan_matches_brute_force(prop2):
    scan = prop2.artifacts["scan"]
    assert scan["rules"] == scan["brute_force_rules"] == 256
    assert scan["pass_fnp_participation"] == scan["brute_force_survivors"] == 6
    assert scan["violators"] == scan["brute_force_violators"] == 2


def test_prop2_violators_replay(prop2):
    _, _, hits = vf._rule_space_scan(2, (1, 2), ("fnp", "participation"), "anonymity", False)
    stored = prop2.artifacts["scan"]["violator_tables"]
    assert len(hits) == len(stored) == 2
    for (rule, res), entry in zip(hits, stored):
        assert entry["anonymity_witness"] == res.to_json()["witness"]
        assert ax.replay_json(json.loads(json.dumps(res.to_json())), rule)


def test_prop2_wide_pool_restores_anonymity(prop2):
    wide = prop2.artifacts["wide_scan"]
    assert wide["solutions"] == 4 and wide["non_anonymous"] == 0
    assert prop2.outcome == vf.REFUTED
    validate(prop2.to_json(), "verdict_report")


def test_brute_force_rule_space_refuses_large_spaces():
    # ids {1,2,3} give 26 profiles and 2^26 rules; that pool is left to the constraint model
    with pytest.raises(ValueError):
        vf.brute_force_rule_space(2, (1, 2, 3))


def test_prop3_confirmed():
    report = vf.verify_prop3()
    assert report.outcome == vf.CONFIRMED
    assert report.artifacts["wide_scan"]["solutions"] == 0


# --- anonymity with neutrality on a fixed society ------------------------------------------


@pytest.mark.parametrize("m, n, compatible", [(2, 1, True), (2, 2, False), (3, 1, True), (3, 2, True),
                                              (4, 2, False), (3, 3, False)])
def test_remark2_cases(m, n, compatible):
    report = vf.verify_remark2(m, n)
    assert report.outcome == vf.CONFIRMED
    assert report.artifacts["compatible"] is compatible
    assert vf.divisor_sum_writable(m, n) is not compatible


def test_remark2_two_by_two_scans_sixteen_rules():
    arts = vf.verify_remark2(2, 2).artifacts
    assert arts["method"] == "exhaustive"
    assert arts["rules_scanned"] == 16 and arts["anonymous_and_neutral"] == 0


def test_divisor_criterion_matches_orbit_test():
    # the orbit test enumerates (m!)^n profiles, so keep to small sizes
    for m, n in itertools.product(range(1, 6), range(1, 5)):
        if math.factorial(m) ** n > 2000:
            continue
        ok, _ = vf.orbit_compatible(m, n)
        assert ok is not vf.divisor_sum_writable(m, n), (m, n)


# --- the impossibility search ----------------------------------------------------------


@pytest.fixture(scope="module")
def thm1():
    return vf.verify_theorem1()


def test_theorem1_depth_two(thm1):
    assert thm1.outcome == vf.CONFIRMED
    arts = thm1.artifacts
    assert arts["unsat_depth"] == 2
    assert [lv["variables"] for lv in arts["levels"]] == [4, 14]
    assert arts["levels"][0]["satisfiable"] and not arts["levels"][1]["satisfiable"]


def test_theorem1_drop_one(thm1):
    drops = thm1.artifacts["drop_one"]
    assert set(drops) == set(vf.THEOREM1_FAMILIES)
    for fam, entry in drops.items():
        assert entry["satisfiable"] and entry["kept_axioms_confirmed"], fam


def test_theorem1_budget_exhaustion_is_inconclusive():
    report = vf.verify_theorem1(budget=0.0)
    assert report.outcome == vf.INCONCLUSIVE
    assert report.exit_code == 2


def test_theorem1_ceiling_below_depth_is_inconclusive():
    report = vf.verify_theorem1(ceiling=1)
    assert report.outcome == vf.INCONCLUSIVE
    assert report.artifacts["unsat_depth"] is None


def test_theorem1_deterministic(thm1):
    assert _stable(vf.verify_theorem1()) == _stable(thm1)


# --- maximality ----------------------------------------------------------------------


@pytest.fixture(scope="module")
def thm2():
    return vf.verify_theorem2()


def test_theorem2_outcome(thm2):
    arts = thm2.artifacts
    assert thm2.outcome == vf.CONFIRMED
    assert arts["orders"] == 24 and arts["non_separable"] == 16
    assert arts["empty_top"] == 4 and arts["full_top"] == 4
    assert arts["split_matches"] and arts["checker_agrees"]
    assert len(thm2.table["rows"]) == 16


def test_theorem2_witnesses_replay(thm2):
    objs = ("x", "y")
    everything = subsets_domain(objs, "all")
    by_json = {json.dumps(e["preference"]): e for e in thm2.artifacts["constructions"]}
    for p in everything.preferences:
        if is_separable(p):
            continue
        entry = by_json[json.dumps(preference_to_json(p, everything))]
        for name in ("f_gt", "f_geq"):
            if "witness" not in entry[name]:
                continue
            ext = tops_only_extension(get_rule(name, objs), separable_plus(objs, p))
            w = ax.Witness.from_json(entry[name]["witness"], ext.domain)
            assert ax.replay(w, ext)


def test_classifier_finds_a_pair_exactly_for_nonseparable_orders():
    for p in subsets_domain(2, "all").preferences:
        assert bool(vf.classify_nonseparable(p, ("x", "y"))) is not is_separable(p)


def test_construction_on_the_documented_order():
    e, x, y, xy = subsets("xy")
    p = Preference((x, e, y, xy))
    got = vf.theorem2_construction(p, "f_gt", ("x", "y"))
    assert got is not None
    assert vf.theorem2_construction(p, "f_geq", ("x", "y")) is not None


# --- reports ------------------------------------------------------------------------


def test_independence_matrix_two_objects_quick():
    report = vf.independence_matrix(3, ax.CheckBounds(2, 1))
    validate(report.to_json(), "verdict_report")
    for name, row in report.artifacts["cells"].items():
        for cell in row.values():
            if "witness" in cell:
                assert cell["replayed"], name


def test_report_render_formats():
    report = vf.verify_remark2(2, 2)
    assert report.render().startswith("remark2: confirmed")
    assert "**confirmed**" in report.render("markdown")
    assert json.loads(report.dumps())["outcome"] == "confirmed"


def test_report_json_byte_identical_modulo_time():
    assert _stable(vf.verify_remark2(3, 2)) == _stable(vf.verify_remark2(3, 2))


def test_unknown_outcome_rejected():
    with pytest.raises(ValueError):
        vf.VerdictReport("thm1", {}, "maybe")


def test_multichoose():
    for n, k in itertools.product(range(1, 5), range(0, 4)):
        assert vf.multichoose(n, k) == len(list(itertools.combinations_with_replacement(range(n), k)))
