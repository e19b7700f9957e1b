"""Voting rules over variable societies, a name registry, and tops-only extension."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from .errors import AxiomlabError, DomainError, OutOfBoundsError
from .prefcore import (
    Domain,
    ObjectSet,
    Preference,
    Profile,
    domain_to_json,
    fmt_alt,
    separable_representative,
    subsets,
    subsets_domain,
    universal_domain,
)

INDEPENDENCE_AXIOMS = ("ontoness", "tops_only", "fnp", "participation", "object_neutrality")


@dataclass(frozen=True, eq=False)
class RuleSpec:
    """A named rule bound to the domain it is defined on.

    ``key`` names the ballot statistic the rule reads: the outcome depends on
    the profile only through each voter's id and ``key(P_i)``.  ``None`` means
    the whole preference.  Checkers group ballots by ``(top, key)`` and audit
    the claim before relying on it.
    """

    name: str
    domain: Domain
    evaluate: Callable[[Profile], Hashable]
    key: Callable[[Preference], Hashable] | None = None
    params: dict = field(default_factory=dict)
    expected: dict | None = None

    def __call__(self, profile: Profile):
        return self.evaluate(profile)

    def descriptor(self) -> dict:
        return {"name": self.name, "domain": domain_to_json(self.domain), "parameters": dict(self.params)}


def top_key(p: Preference):
    return p.order[0]


def bottom_key(p: Preference):
    return p.order[-1]


def constant_key(p: Preference):
    return None


def top_second_key(p: Preference):
    return p.order[0], p.order[1]


def tops_support(tops, objects) -> Counter:
    """How many of ``tops`` contain each object."""
    counts = Counter({o: 0 for o in objects})
    for t in tops:
        counts.update(t)
    return counts


# --- the rules -------------------------------------------------------------


def rule_const_all(profile: Profile, objects: Sequence[str]) -> ObjectSet:
    return frozenset(objects)


def tilde_members(profile: Profile, objects: Sequence[str]) -> list[int]:
    """Voters whose top is not the full set and who rank the full set second."""
    full = frozenset(objects)
    return [i for i, p in profile.items() if p.order[0] != full and p.order[1] == full]


def rule_tilde(profile: Profile, objects: Sequence[str]) -> ObjectSet:
    members = tilde_members(profile, objects)
    if members:
        tops = {profile[i].top for i in members}
        if len(tops) == 1:
            return tops.pop()
    return frozenset(objects)


def rule_min_index(profile: Profile):
    return profile.ballots[0][1].top


def rule_unique_top(profile: Profile, objects: Sequence[str], count: str = "tops") -> ObjectSet:
    """Objects supported by exactly one top.

    ``count="tops"`` counts distinct top sets, ``count="voters"`` counts voters.
    """
    if count == "tops":
        tops = set(profile.tops())
    elif count == "voters":
        tops = profile.tops()
    else:
        raise ValueError(f"count must be 'tops' or 'voters', not {count!r}")
    support = tops_support(tops, objects)
    return frozenset(o for o in objects if support[o] == 1)


def default_succ_order(objects: Sequence[str]) -> tuple[ObjectSet, ...]:
    """Larger sets first; within a size, lexicographic in object order."""
    pos = {o: k for k, o in enumerate(objects)}
    return tuple(sorted(subsets(objects), key=lambda s: (-len(s), sorted(pos[o] for o in s))))


def rule_order_max(profile: Profile, succ: Sequence):
    rank = {a: k for k, a in enumerate(succ)}
    return min(profile.tops(), key=rank.__getitem__)


def _majority_tops(profile: Profile, objects: Sequence[str], strict: bool) -> ObjectSet:
    distinct = set(profile.tops())
    support = tops_support(distinct, objects)
    n = len(distinct)
    if strict:
        return frozenset(o for o in objects if 2 * support[o] > n)
    return frozenset(o for o in objects if 2 * support[o] >= n)


def rule_strict_majority_tops(profile: Profile, objects: Sequence[str]) -> ObjectSet:
    return _majority_tops(profile, objects, strict=True)


def rule_weak_majority_tops(profile: Profile, objects: Sequence[str]) -> ObjectSet:
    return _majority_tops(profile, objects, strict=False)


def rule_quota(profile: Profile, objects: Sequence[str], q: str) -> ObjectSet:
    tops = profile.tops()
    if q == "one":
        return frozenset().union(*tops)
    if q == "unanimous":
        return frozenset(objects).intersection(*tops)
    raise ValueError(f"quota must be 'one' or 'unanimous', not {q!r}")


def rule_voter_top_or(profile: Profile, status_quo, voter: int = 1):
    return profile[voter].top if voter in profile else status_quo


def rule_voter_bottom_or(profile: Profile, status_quo, voter: int = 1):
    return profile[voter].bottom if voter in profile else status_quo


# --- construction ------------------------------------------------------------


def _expect(failing: str | None) -> dict:
    return {ax: ax != failing for ax in INDEPENDENCE_AXIOMS}


def make_const_all(domain: Domain) -> RuleSpec:
    objs = domain.objects
    return RuleSpec("f_const", domain, lambda prof: rule_const_all(prof, objs), constant_key,
                    expected=_expect("ontoness"))


def make_tilde(domain: Domain) -> RuleSpec:
    objs = domain.objects
    full = frozenset(objs)

    def key(p):
        return p.order[0] != full and p.order[1] == full

    return RuleSpec("f_tilde", domain, lambda prof: rule_tilde(prof, objs), key,
                    expected=_expect("tops_only"))


def make_min_index(domain: Domain) -> RuleSpec:
    return RuleSpec("f_min", domain, rule_min_index, top_key, expected=_expect("fnp"))


def make_unique_top(domain: Domain, count: str = "tops") -> RuleSpec:
    objs = domain.objects
    name = "f_star" if count == "tops" else "f_star_voters"
    return RuleSpec(name, domain, lambda prof: rule_unique_top(prof, objs, count), top_key,
                    params={"count": count}, expected=_expect("participation") if count == "tops" else None)


def make_order_max(domain: Domain, succ: Sequence | None = None) -> RuleSpec:
    succ = tuple(succ) if succ is not None else default_succ_order(domain.objects)
    if set(succ) != set(domain.alternatives) or len(succ) != len(domain.alternatives):
        raise DomainError("the tie order must rank every alternative exactly once")
    params = {"order": [fmt_alt(a, domain.objects) for a in succ]}
    return RuleSpec("f_succ", domain, lambda prof: rule_order_max(prof, succ), top_key,
                    params=params, expected=_expect("object_neutrality"))


def make_majority(domain: Domain, strict: bool) -> RuleSpec:
    objs = domain.objects
    fn = rule_strict_majority_tops if strict else rule_weak_majority_tops
    return RuleSpec("f_gt" if strict else "f_geq", domain, lambda prof: fn(prof, objs), top_key,
                    expected=_expect(None))


def make_quota(domain: Domain, q: str) -> RuleSpec:
    objs = domain.objects
    name = {"one": "quota1", "unanimous": "quota_unanimous"}[q]
    return RuleSpec(name, domain, lambda prof: rule_quota(prof, objs, q), top_key,
                    params={"quota": q}, expected=_expect(None))


def make_voter_top(domain: Domain, voter: int = 1, status_quo=None) -> RuleSpec:
    sq = domain.alternatives[0] if status_quo is None else status_quo
    return RuleSpec("remark1_top", domain, lambda prof: rule_voter_top_or(prof, sq, voter), top_key,
                    params={"voter": voter, "status_quo": fmt_alt(sq, domain.objects)})


def make_voter_bottom(domain: Domain, voter: int = 1, status_quo=None) -> RuleSpec:
    sq = domain.alternatives[0] if status_quo is None else status_quo
    return RuleSpec("remark1_bottom", domain, lambda prof: rule_voter_bottom_or(prof, sq, voter), bottom_key,
                    params={"voter": voter, "status_quo": fmt_alt(sq, domain.objects)})


def tops_only_extension(rule: RuleSpec, ext_domain: Domain) -> RuleSpec:
    """Extend a tops-only rule on separable preferences to a larger subsets domain.

    Each ballot is replaced by the canonical separable order with the same top
    before the base rule is evaluated.
    """
    base = rule.domain
    if base.kind != "separable":
        raise DomainError(f"{rule.name} is not defined on the separable domain")
    if ext_domain.objects != base.objects:
        raise DomainError("extension domain ranges over a different object universe")
    objs = base.objects
    reps = {t: separable_representative(t, objs) for t in base.alternatives}

    def evaluate(profile: Profile):
        return rule.evaluate(Profile._trusted(tuple((i, reps[p.order[0]]) for i, p in profile.items())))

    return RuleSpec(f"ext:{rule.name}", ext_domain, evaluate, top_key,
                    params={"base": rule.name, **rule.params}, expected=rule.expected)


def table_rule(name: str, domain: Domain, type_fn: Callable[[Preference], Hashable], table: dict,
               anonymous: bool) -> RuleSpec:
    """Rule given by a lookup table over ballot types.

    Anonymous tables are keyed by ``frozenset(Counter(types).items())``; the
    others by ``(society, types)``.  Profiles outside the table raise
    :class:`OutOfBoundsError`.
    """

    def evaluate(profile: Profile):
        types = tuple(type_fn(p) for p in profile.preferences())
        k = profile_type_key(profile.society, types, anonymous)
        try:
            return table[k]
        except KeyError:
            raise OutOfBoundsError(f"{name} is not tabulated for {profile!r}") from None

    return RuleSpec(name, domain, evaluate, type_fn, params={"anonymous": anonymous, "entries": len(table)})


def profile_type_key(society, types, anonymous: bool):
    if anonymous:
        return frozenset(Counter(types).items())
    return tuple(society), tuple(types)


# --- registry -----------------------------------------------------------------

SEPARABLE_RULES = ("f_gt", "f_geq", "quota1", "quota_unanimous")
RULE_NAMES = ("f_gt", "f_geq", "f_min", "f_star", "f_star_voters", "f_succ", "f_const", "f_tilde",
              "quota1", "quota_unanimous", "remark1_top", "remark1_bottom")
INDEPENDENCE_RULES = ("f_const", "f_tilde", "f_min", "f_star", "f_succ")

_FACTORIES = {
    "f_gt": lambda d: make_majority(d, strict=True),
    "f_geq": lambda d: make_majority(d, strict=False),
    "f_min": make_min_index,
    "f_star": make_unique_top,
    "f_star_voters": lambda d: make_unique_top(d, count="voters"),
    "f_succ": make_order_max,
    "f_const": make_const_all,
    "f_tilde": make_tilde,
    "quota1": lambda d: make_quota(d, "one"),
    "quota_unanimous": lambda d: make_quota(d, "unanimous"),
    "remark1_top": make_voter_top,
    "remark1_bottom": make_voter_bottom,
}
_ANY_DOMAIN = ("f_min", "remark1_top", "remark1_bottom")


class UnknownRuleError(AxiomlabError, KeyError):
    pass


def get_rule(name: str, objects: int | Sequence[str] = 2, alternatives: int | Sequence | None = None,
             domain: Domain | None = None) -> RuleSpec:
    """Look a rule up by registry name; ``ext:<base>`` extends a separable rule to all orders."""
    if name.startswith("ext:"):
        base = get_rule(name[4:], objects)
        return tops_only_extension(base, domain or subsets_domain(base.domain.objects, "all"))
    if name not in _FACTORIES:
        raise UnknownRuleError(f"unknown rule {name!r}; known: {', '.join(RULE_NAMES)}, ext:<base>")
    if domain is None:
        if alternatives is not None:
            if name not in _ANY_DOMAIN:
                raise DomainError(f"{name} needs a subsets domain")
            domain = universal_domain(alternatives)
        else:
            domain = subsets_domain(objects, "separable" if name in SEPARABLE_RULES else "all")
    elif domain.kind == "universal" and name not in _ANY_DOMAIN:
        raise DomainError(f"{name} needs a subsets domain")
    return _FACTORIES[name](domain)


def catalog(objects: int | Sequence[str] = 2) -> list[RuleSpec]:
    return [get_rule(n, objects) for n in RULE_NAMES]
