import itertools
import json

import pytest

from axiomlab import axioms as ax
from axiomlab.axioms import PASS, CheckBounds, check, replay, replay_json
from axiomlab.errors import DomainError
from axiomlab.prefcore import Profile, subsets_domain, universal_domain
from axiomlab.rules import catalog, get_rule, make_voter_bottom, make_voter_top

SMALL = CheckBounds(2, 1, (1, 2, 3))


# --- a raw-profile oracle, no ballot classes ---------------------------------------------


def raw_profiles(domain, bounds):
    for s in range(1, bounds.n_max + 1):
        for ids in itertools.combinations(bounds.pool, s):
            for prefs in itertools.product(domain.preferences, repeat=s):
                yield Profile(dict(zip(ids, prefs)))


def oracle(axiom, rule, bounds):
    """True iff no violation exists, by brute force over raw profiles."""
    dom = rule.domain
    f = rule.evaluate
    profs = list(raw_profiles(dom, bounds))
    if axiom == "ontoness":
        for s in range(1, bounds.n_max + 1):
            for ids in itertools.combinations(bounds.pool, s):
                seen = {f(p) for p in profs if p.society == ids}
                if set(dom.alternatives) - seen:
                    return False
        return True
    if axiom == "participation":
        return all(p[i].weakly_prefers(f(p), f(p.without_voter(i))) for p in profs if len(p) > 1 for i in p)
    if axiom == "fnp":
        for p in profs:
            free = [j for j in bounds.pool if j not in p]
            for k in range(1, bounds.n_clone_max + 1):
                for fresh in itertools.combinations(free, k):
                    for i in p:
                        q = Profile({**dict(p.items()), **{j: p[i] for j in fresh}})
                        if not p[i].weakly_prefers(f(p), f(q)):
                            return False
        return True
    if axiom == "anonymity":
        for p in profs:
            for image in itertools.permutations(bounds.pool):
                sigma = dict(zip(bounds.pool, image))
                if f(p.permute_voters(sigma)) != f(p):
                    return False
        return True
    if axiom == "tops_only":
        seen = {}
        for p in profs:
            k = (p.society, p.tops())
            if seen.setdefault(k, f(p)) != f(p):
                return False
        return True
    raise ValueError(axiom)


@pytest.mark.parametrize("rule", catalog(2), ids=lambda r: r.name)
@pytest.mark.parametrize("axiom", ["ontoness", "participation", "fnp", "anonymity", "tops_only"])
def test_checker_matches_raw_oracle(rule, axiom):
    res = check(axiom, rule, SMALL)
    assert res.passed == oracle(axiom, rule, SMALL)
    if not res.passed:
        assert replay(res.witness, rule)


# --- documented examples --------------------------------------------------------------


def test_const_all_fails_ontoness():
    res = check("ontoness", get_rule("f_const"), CheckBounds(2, 1))
    assert not res.passed
    assert res.witness.alternative == frozenset()


def test_quota_one_onto():
    assert check("ontoness", get_rule("quota1"), CheckBounds(2, 1)).passed


def test_single_alternative_is_onto():
    assert check("ontoness", get_rule("f_min", alternatives=1)).passed


def test_tilde_fails_tops_onliness_on_two_objects():
    res = check("tops_only", get_rule("f_tilde"))
    assert not res.passed
    assert res.witness.base.tops() == res.witness.derived.tops()
    assert replay(res.witness, get_rule("f_tilde"))


@pytest.mark.parametrize("name", ["f_min", "f_gt"])
def test_tops_only_passes(name):
    assert check("tops_only", get_rule(name)).passed


def test_min_index_fails_fnp_and_anonymity():
    f = get_rule("f_min")
    for axiom in ("fnp", "anonymity"):
        res = check(axiom, f, CheckBounds(2, 1))
        assert not res.passed and replay(res.witness, f)
    assert check("participation", f).passed


def test_remark1_rules():
    dom = universal_domain(3)
    top, bottom = make_voter_top(dom), make_voter_bottom(dom)
    assert check("participation", top).passed
    assert not check("anonymity", top).passed
    assert check("fnp", bottom).passed
    assert not check("anonymity", bottom).passed


@pytest.mark.parametrize("name", ["f_gt", "f_geq", "quota1", "quota_unanimous"])
def test_separable_rules_pass_fnp_and_participation(name):
    f = get_rule(name)
    assert check("fnp", f).passed
    assert check("participation", f).passed


def test_quota_one_strong_fnp():
    assert check("strong_fnp", get_rule("quota1"), CheckBounds(2, 1)).passed
    assert check("strong_fnp", get_rule("f_const")).passed


def test_unique_top_participation_witness_on_three_objects():
    f = get_rule("f_star", 3)
    res = check("participation", f)
    assert not res.passed
    w = res.witness
    assert replay(w, f)
    a, b = w.outputs
    assert w.base[w.voter].prefers(b, a)


def test_neutrality_examples():
    assert not check("neutrality", get_rule("f_const", domain=subsets_domain(2, "all"))).passed
    assert check("neutrality", get_rule("f_min", alternatives=3)).passed
    # a fixed status quo for societies without voter 1 breaks neutrality
    assert not check("neutrality", make_voter_top(universal_domain(3))).passed
    with pytest.raises(DomainError):
        check("neutrality", get_rule("f_gt"))


def test_object_neutrality_examples():
    assert check("object_neutrality", get_rule("f_const")).passed
    assert check("object_neutrality", get_rule("f_gt")).passed
    res = check("object_neutrality", get_rule("f_succ", 3))
    assert not res.passed and replay(res.witness, get_rule("f_succ", 3))


def test_identity_permutations_never_witness():
    f = get_rule("quota1")
    assert ax._anonymity_scan(f, f.domain, CheckBounds(1, 1, (1,)), 1) is None


# --- invariants ------------------------------------------------------------------------


@pytest.mark.parametrize("rule", catalog(2), ids=lambda r: r.name)
def test_strong_fnp_implies_fnp(rule):
    b = CheckBounds(2, 2)
    if check("strong_fnp", rule, b).passed:
        assert check("fnp", rule, b).passed


@pytest.mark.parametrize("rule", catalog(2), ids=lambda r: r.name)
def test_fnp_and_participation_imply_anonymity_on_catalog(rule):
    b = CheckBounds()
    if check("fnp", rule, b).passed and check("participation", rule, b).passed:
        assert check("anonymity", rule, b).passed


@pytest.mark.parametrize("rule", catalog(2), ids=lambda r: r.name)
def test_monotone_in_bounds(rule):
    big = CheckBounds(3, 2)
    small = CheckBounds(2, 1, (1, 2, 3))
    for axiom in ("ontoness", "tops_only", "fnp", "participation", "anonymity", "object_neutrality"):
        if check(axiom, rule, big).passed and axiom not in ("ontoness",):
            assert check(axiom, rule, small).passed, axiom


@pytest.mark.parametrize("rule", catalog(2), ids=lambda r: r.name)
def test_fail_verdicts_replay_from_json(rule):
    for axiom in ax.AXIOMS:
        if axiom == "neutrality" and not ax.closed_under_relabeling(rule.domain):
            continue
        res = check(axiom, rule, CheckBounds(2, 1))
        doc = json.loads(json.dumps(res.to_json()))
        if res.passed:
            assert "witness" not in doc
        else:
            assert replay_json(doc, rule)


def test_replay_rejects_tampered_witness():
    f = get_rule("f_min")
    res = check("fnp", f)
    w = res.witness
    w.outputs = (w.outputs[1], w.outputs[0])
    assert not replay(w, f)


def test_bounds_validation():
    with pytest.raises(ValueError):
        CheckBounds(0, 1)
    with pytest.raises(ValueError):
        CheckBounds(3, 1, (1, 2))
    with pytest.raises(ValueError):
        CheckBounds(1, 1, (1, 1))
    b = CheckBounds(2, 1)
    assert CheckBounds.from_json(b.to_json()) == b
    assert b.pool == (1, 2, 3)


def test_result_render_mentions_bounds():
    text = check("participation", get_rule("f_star", 3)).render()
    assert "n_max=3" in text and "n'_max=2" in text


def test_unknown_axiom():
    with pytest.raises(KeyError):
        check("monotonicity", get_rule("f_gt"))


def test_ontoness_is_verdict_string():
    assert check("ontoness", get_rule("quota1")).verdict == PASS
