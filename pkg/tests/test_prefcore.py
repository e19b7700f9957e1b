import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axiomlab.errors import DomainError, EnumerationCapError, NotBijectiveError, UnknownAlternativeError, VoterError
from axiomlab.prefcore import (
    Preference,
    Profile,
    domain_from_json,
    domain_to_json,
    enumerate_linear_orders,
    enumerate_separable,
    is_separable,
    permute_alternatives,
    permute_objects,
    profile_document,
    read_profile_document,
    separable_by_definition,
    separable_by_top,
    separable_plus,
    separable_representative,
    subsets,
    subsets_domain,
    universal_domain,
)


def oracle_subsets(objs):
    return [frozenset(c) for k in range(len(objs) + 1) for c in itertools.combinations(objs, k)]


def oracle_separable(order, objs):
    """The definition, written out against raw tuples."""
    pos = {s: k for k, s in enumerate(order)}
    for s in order:
        for x in objs:
            if x in s:
                continue
            if (pos[s | {x}] < pos[s]) != (pos[frozenset([x])] < pos[frozenset()]):
                return False
    return True


def oracle_counts(objs):
    alts = oracle_subsets(objs)
    total = sep = 0
    for order in itertools.permutations(alts):
        total += 1
        sep += oracle_separable(order, objs)
    return total, sep


def test_counts_two_objects_match_oracle():
    total, sep = oracle_counts("xy")
    assert (total, sep) == (24, 8)
    assert len(enumerate_linear_orders(subsets("xy"))) == total
    assert len(enumerate_separable("xy")) == sep


def test_counts_three_objects_match_oracle():
    total, sep = oracle_counts("xyz")
    assert (total, sep) == (40320, 384)
    assert len(enumerate_separable("xyz")) == sep


def test_universal_three_alternatives():
    prefs = enumerate_linear_orders(["a", "b", "c"])
    assert len(prefs) == 6
    assert len(set(prefs)) == 6


def test_cap_exceeded():
    with pytest.raises(EnumerationCapError):
        enumerate_linear_orders(subsets("xyzw"))
    with pytest.raises(EnumerationCapError):
        enumerate_linear_orders(list(range(5)), cap=100)


def test_cap_env_override(monkeypatch):
    monkeypatch.setenv("AXIOMLAB_CAP", "10")
    with pytest.raises(EnumerationCapError):
        enumerate_linear_orders(["a", "b", "c", "d"])


def test_empty_alternatives_rejected():
    with pytest.raises(ValueError):
        enumerate_linear_orders([])


def test_top_criterion_agrees_everywhere_on_two_objects():
    for p in enumerate_linear_orders(subsets("xy")):
        assert separable_by_definition(p) == separable_by_top(p) == oracle_separable(p.order, "xy")


def test_top_criterion_agrees_on_sampled_three_object_orders():
    rng = random.Random(7)
    alts = list(subsets("xyz"))
    for _ in range(1000):
        rng.shuffle(alts)
        p = Preference(tuple(alts))
        assert separable_by_definition(p) == separable_by_top(p)


def test_separable_examples():
    e, x, y, xy = subsets("xy")
    assert is_separable(Preference((x, xy, e, y)))
    assert not is_separable(Preference((x, y, e, xy)))


def test_representative_is_separable_with_given_top():
    for objs in ("xy", "xyz"):
        for t in subsets(objs):
            p = separable_representative(t, objs)
            assert p.top == t
            assert is_separable(p)


def test_representative_rejects_foreign_set():
    with pytest.raises(DomainError):
        separable_representative(frozenset("q"), "xy")


def test_preference_basics():
    p = Preference(("a", "b", "c"))
    assert p.top == "a" and p.bottom == "c"
    assert p.prefers("a", "c") and not p.prefers("c", "a")
    assert p.weakly_prefers("b", "b")
    with pytest.raises(UnknownAlternativeError):
        p.rank_of("z")
    with pytest.raises(ValueError):
        Preference(("a", "a"))


def test_profile_validation():
    p = Preference(("a", "b"))
    with pytest.raises(VoterError):
        Profile({})
    with pytest.raises(VoterError):
        Profile([(1, p), (1, p)])
    with pytest.raises(VoterError):
        Profile({0: p})
    with pytest.raises(DomainError):
        Profile({1: p, 2: Preference(("a", "c"))})
    prof = Profile({2: p, 1: p})
    assert prof.society == (1, 2)
    with pytest.raises(VoterError):
        prof.with_voter(1, p)
    with pytest.raises(VoterError):
        Profile({1: p}).without_voter(1)


def test_permute_voters_moves_ballots():
    a, b = Preference(("a", "b")), Preference(("b", "a"))
    prof = Profile({1: a, 2: b})
    assert prof.permute_voters({1: 2, 2: 1}) == Profile({1: b, 2: a})
    assert prof.permute_voters({1: 3, 3: 1}) == Profile({3: a, 2: b})
    with pytest.raises(NotBijectiveError):
        prof.permute_voters({1: 2})


def test_permutation_rejects_non_bijection():
    p = Preference(("a", "b"))
    with pytest.raises(NotBijectiveError):
        permute_alternatives(p, {"a": "a", "b": "a"})


orders3 = st.permutations(["a", "b", "c"]).map(lambda o: Preference(tuple(o)))
gammas3 = st.permutations(["a", "b", "c"]).map(lambda img: dict(zip("abc", img)))
mus3 = st.permutations(["x", "y", "z"]).map(lambda img: dict(zip("xyz", img)))


@given(orders3, gammas3, gammas3)
def test_alternative_permutations_compose(p, g, h):
    gh = {a: h[g[a]] for a in g}
    assert permute_alternatives(permute_alternatives(p, g), h) == permute_alternatives(p, gh)


@given(orders3, gammas3)
def test_alternative_permutation_preserves_comparisons(p, g):
    q = permute_alternatives(p, g)
    for a, b in itertools.permutations("abc", 2):
        assert p.prefers(a, b) == q.prefers(g[a], g[b])


@settings(max_examples=50)
@given(st.integers(0, 383), mus3)
def test_object_permutation_preserves_separability(k, mu):
    p = enumerate_separable("xyz")[k]
    q = permute_objects(p, mu)
    assert is_separable(q)
    assert q.top == frozenset(mu[o] for o in p.top)


@given(st.lists(st.tuples(st.integers(1, 9), orders3), min_size=1, max_size=5, unique_by=lambda t: t[0]))
def test_profile_json_roundtrip(ballots):
    dom = universal_domain(["a", "b", "c"])
    prof = Profile(ballots)
    again, dom2 = read_profile_document(json.loads(json.dumps(profile_document(prof, dom))))
    assert again == prof and dom2 == dom


def test_domain_json_roundtrip():
    e, x, y, xy = subsets("xy")
    for dom in (subsets_domain(2, "all"), subsets_domain(3, "separable"), universal_domain(4),
                separable_plus("xy", Preference((x, y, e, xy)))):
        assert domain_from_json(json.loads(json.dumps(domain_to_json(dom)))) == dom


def test_separable_plus_adds_one_order():
    e, x, y, xy = subsets("xy")
    extra = Preference((x, y, e, xy))
    dom = separable_plus("xy", extra)
    assert dom.size == 9
    assert dom.contains(extra)
    assert not subsets_domain(2, "separable").contains(extra)
