"""Bounded exhaustive checkers for the eight voting axioms.

Societies are finitized: base societies have at most ``n_max`` voters drawn from
a finite id pool, and clone sets at most ``n_clone_max`` fresh ids.

Checkers never enumerate raw profiles of a large domain.  Ballots are grouped
into classes by ``(top, rule.key)``; the rule's output depends only on the
class vector, so one representative per class decides every outcome, and the
question "does some ballot in class ``c`` rank ``B`` above ``A``?" is answered
from a precomputed table.  This is exact provided the rule honours its key,
which :func:`audit_key` tests exhaustively on small domains and by seeded
sampling otherwise.  Every failure carries a concrete witness that
:func:`replay` re-evaluates from scratch.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterator

import numpy as np

from .errors import DomainError, EnumerationCapError
from .prefcore import (
    Domain,
    Preference,
    Profile,
    alt_from_json,
    alt_to_json,
    domain_from_json,
    domain_to_json,
    fmt_alt,
    profile_from_json,
    profile_to_json,
)
from .rules import RuleSpec

AXIOMS = ("ontoness", "tops_only", "fnp", "strong_fnp", "participation", "anonymity", "neutrality",
          "object_neutrality")
PASS = "pass-within-bounds"
FAIL = "fail"

# Profile-count ceiling for exhaustive key audits and permutation-image tables.
EXHAUSTIVE_AUDIT_LIMIT = 50_000
WORK_CAP = 5_000_000


@dataclass(frozen=True)
class CheckBounds:
    n_max: int = 3
    n_clone_max: int = 2
    id_pool: tuple | None = None
    max_society: int | None = None
    audit_samples: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.n_max < 1 or self.n_clone_max < 1:
            raise ValueError("n_max and n_clone_max must be at least 1")
        if self.id_pool is None:
            # resolve the default so equal bounds compare equal after a JSON round trip
            object.__setattr__(self, "id_pool", tuple(range(1, self.n_max + self.n_clone_max + 1)))
        pool = tuple(self.id_pool)
        if len(set(pool)) != len(pool) or any(not isinstance(i, int) or i < 1 for i in pool):
            raise ValueError("id pool must hold distinct positive integers")
        object.__setattr__(self, "id_pool", tuple(sorted(pool)))
        if len(self.pool) < self.n_max:
            raise ValueError("id pool smaller than n_max")

    @property
    def pool(self) -> tuple:
        return self.id_pool

    def fits(self, size: int) -> bool:
        return self.max_society is None or size <= self.max_society

    def to_json(self) -> dict:
        return {"n_max": self.n_max, "n_clone_max": self.n_clone_max, "id_pool": list(self.pool),
                "max_society": self.max_society}

    @classmethod
    def from_json(cls, doc: dict) -> "CheckBounds":
        return cls(doc["n_max"], doc["n_clone_max"], tuple(doc["id_pool"]), doc.get("max_society"))


@dataclass
class Witness:
    """A counterexample.  Which fields are set depends on the axiom."""

    axiom: str
    base: Profile | None = None
    derived: Profile | None = None
    voter: int | None = None
    clones: tuple = ()
    permutation: dict | None = None
    outputs: tuple | None = None
    society: tuple | None = None
    alternative: Hashable = None

    def to_json(self, domain: Domain) -> dict:
        doc = {"axiom": self.axiom}
        if self.base is not None:
            doc["base"] = profile_to_json(self.base, domain)
        if self.derived is not None:
            doc["derived"] = profile_to_json(self.derived, domain)
        if self.voter is not None:
            doc["voter"] = self.voter
        if self.clones:
            doc["clones"] = list(self.clones)
        if self.permutation is not None:
            doc["permutation"] = [[_perm_json(k, domain, self.axiom), _perm_json(v, domain, self.axiom)]
                                  for k, v in self.permutation.items()]
        if self.outputs is not None:
            doc["outputs"] = [alt_to_json(a, domain) for a in self.outputs]
        if self.society is not None:
            doc["society"] = list(self.society)
            doc["alternative"] = alt_to_json(self.alternative, domain)
        return doc

    @classmethod
    def from_json(cls, doc: dict, domain: Domain) -> "Witness":
        axiom = doc["axiom"]
        perm = None
        if "permutation" in doc:
            perm = {_perm_from_json(k, domain, axiom): _perm_from_json(v, domain, axiom)
                    for k, v in doc["permutation"]}
        return cls(
            axiom=axiom,
            base=profile_from_json(doc["base"], domain) if "base" in doc else None,
            derived=profile_from_json(doc["derived"], domain) if "derived" in doc else None,
            voter=doc.get("voter"),
            clones=tuple(doc.get("clones", ())),
            permutation=perm,
            outputs=tuple(alt_from_json(a, domain) for a in doc["outputs"]) if "outputs" in doc else None,
            society=tuple(doc["society"]) if "society" in doc else None,
            alternative=alt_from_json(doc["alternative"], domain) if "alternative" in doc else None,
        )

    def describe(self, domain: Domain) -> str:
        f = lambda a: fmt_alt(a, domain.objects)  # noqa: E731
        if self.axiom == "ontoness":
            return f"society {list(self.society)} never gets {f(self.alternative)}"
        lines = [f"base    {self.base}", f"derived {self.derived}"]
        if self.outputs:
            lines.append(f"outputs {f(self.outputs[0])} -> {f(self.outputs[1])}")
        if self.voter is not None:
            lines.append(f"voter {self.voter}" + (f", clones {list(self.clones)}" if self.clones else ""))
        if self.permutation:
            lines.append("permutation " + ", ".join(f"{f(k)}->{f(v)}" for k, v in self.permutation.items()))
        return "\n".join(lines)


def _perm_json(v, domain, axiom):
    if axiom == "neutrality":
        return alt_to_json(v, domain)
    return v


def _perm_from_json(v, domain, axiom):
    if axiom == "neutrality":
        return alt_from_json(v, domain)
    return v


@dataclass
class CheckResult:
    rule: str
    axiom: str
    bounds: CheckBounds
    domain: Domain
    verdict: str
    witness: Witness | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        doc = {"rule": self.rule, "axiom": self.axiom, "bounds": self.bounds.to_json(),
               "domain": domain_to_json(self.domain), "verdict": self.verdict, "notes": list(self.notes)}
        if self.witness is not None:
            doc["witness"] = self.witness.to_json(self.domain)
        return doc

    def render(self) -> str:
        b = self.bounds
        head = (f"{self.rule} / {self.axiom}: {self.verdict} "
                f"[{self.domain.describe()}; n_max={b.n_max}, n'_max={b.n_clone_max}, ids={list(b.pool)}]")
        if self.witness is None:
            return head
        return head + "\n" + self.witness.describe(self.domain)


# --- ballot classes ----------------------------------------------------------


@dataclass
class BallotClasses:
    domain: Domain
    reps: list
    tops: list
    members: list
    class_of: np.ndarray
    better: np.ndarray

    @property
    def count(self) -> int:
        return len(self.reps)

    def witness_pref(self, c: int, b, a) -> Preference:
        """First member of class ``c`` that ranks ``b`` strictly above ``a``."""
        bi, ai = self.domain.alt_index[b], self.domain.alt_index[a]
        ranks = self.domain.rank_matrix
        for k in self.members[c]:
            if ranks[k, bi] < ranks[k, ai]:
                return self.domain.preferences[k]
        raise LookupError("no such member")

    def can_prefer(self, c: int, b, a) -> bool:
        idx = self.domain.alt_index
        return bool(self.better[c, idx[b], idx[a]])


@lru_cache(maxsize=64)
def ballot_classes(domain: Domain, key: Callable | None) -> BallotClasses:
    prefs = domain.preferences
    ids: dict = {}
    class_of = np.empty(len(prefs), dtype=np.int64)
    members: list = []
    for k, p in enumerate(prefs):
        sig = (p.order[0], key(p) if key is not None else p.order)
        c = ids.get(sig)
        if c is None:
            c = ids[sig] = len(members)
            members.append([])
        members[c].append(k)
        class_of[k] = c
    m = len(domain.alternatives)
    ranks = domain.rank_matrix
    better = np.zeros((len(members), m, m), dtype=bool)
    for c, mem in enumerate(members):
        r = ranks[mem]
        better[c] = (r[:, :, None] < r[:, None, :]).any(axis=0)
    members = [np.asarray(mem) for mem in members]
    reps = [prefs[mem[0]] for mem in members]
    return BallotClasses(domain, reps, [p.order[0] for p in reps], members, class_of, better)


class _Eval:
    """Memoized rule evaluation on class vectors."""

    def __init__(self, rule: RuleSpec, classes: BallotClasses):
        self.rule = rule
        self.classes = classes
        self.cache: dict = {}
        self.alts = classes.domain.alt_index

    def profile(self, ids, cs, prefs=None) -> Profile:
        reps = self.classes.reps
        if prefs is None:
            prefs = [reps[c] for c in cs]
        pairs = sorted(zip(ids, prefs), key=lambda t: t[0])
        return Profile._trusted(tuple(pairs))

    def __call__(self, ids, cs):
        k = (ids, cs)
        out = self.cache.get(k)
        if out is None:
            out = self.rule.evaluate(self.profile(ids, cs))
            if out not in self.alts:
                raise DomainError(f"{self.rule.name} returned {out!r}, not an alternative of its domain")
            self.cache[k] = out
        return out


def _societies(bounds: CheckBounds, size: int, anonymous: bool):
    pool = bounds.pool
    if anonymous:
        return [pool[:size]]
    return list(itertools.combinations(pool, size))


def _class_vectors(n_classes: int, size: int, anonymous: bool):
    if anonymous:
        return itertools.combinations_with_replacement(range(n_classes), size)
    return itertools.product(range(n_classes), repeat=size)


def _base_profiles(classes, bounds, anonymous, sizes=None) -> Iterator[tuple]:
    sizes = range(1, bounds.n_max + 1) if sizes is None else sizes
    for s in sizes:
        for ids in _societies(bounds, s, anonymous):
            for cs in _class_vectors(classes.count, s, anonymous):
                yield ids, cs


def _fresh_sets(bounds, ids, max_size, anonymous):
    free = [i for i in bounds.pool if i not in ids]
    for k in range(1, min(max_size, len(free)) + 1):
        if not bounds.fits(len(ids) + k):
            break
        if anonymous:
            yield tuple(free[:k])
        else:
            yield from itertools.combinations(free, k)


def _positions(cs, anonymous):
    """Voter positions worth trying; duplicate classes are interchangeable under anonymity."""
    if not anonymous:
        return range(len(cs))
    seen = set()
    out = []
    for j, c in enumerate(cs):
        if c not in seen:
            seen.add(c)
            out.append(j)
    return out


def _result(rule, axiom, bounds, domain, witness=None, notes=()):
    return CheckResult(rule.name, axiom, bounds, domain, FAIL if witness else PASS, witness, list(notes))


def _setup(rule, domain):
    domain = domain or rule.domain
    return domain, ballot_classes(domain, rule.key)


# --- anonymity ---------------------------------------------------------------


def _anonymity_scan(rule, domain, bounds, max_size):
    classes = ballot_classes(domain, rule.key)
    ev = _Eval(rule, classes)
    pool = bounds.pool
    for s in range(1, min(max_size, len(pool)) + 1):
        canon = pool[:s]
        for ids in itertools.combinations(pool, s):
            for cs in itertools.product(range(classes.count), repeat=s):
                order = sorted(range(s), key=lambda j: cs[j])
                ref = ev(canon, tuple(cs[j] for j in order))
                if ev(ids, cs) != ref:
                    sigma = {ids[order[k]]: canon[k] for k in range(s)}
                    rest_from = [i for i in pool if i not in sigma]
                    rest_to = [i for i in pool if i not in sigma.values()]
                    sigma.update(zip(rest_from, rest_to))
                    sigma = {k: v for k, v in sorted(sigma.items()) if k != v}
                    base = ev.profile(ids, cs)
                    derived = base.permute_voters(sigma)
                    return Witness("anonymity", base, derived, permutation=sigma,
                                   outputs=(ev(ids, cs), ref))
    return None


_ANON_CACHE: dict = {}


def is_anonymous_within(rule, domain, bounds, max_size) -> bool:
    """Anonymity pre-pass used to collapse societies and class vectors."""
    if bounds.max_society is not None:
        max_size = min(max_size, bounds.max_society)
    key = (rule, domain, bounds.pool, max_size)
    if key not in _ANON_CACHE:
        _ANON_CACHE[key] = _anonymity_scan(rule, domain, bounds, max_size) is None
    return _ANON_CACHE[key]


def check_anonymity(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    """Invariance under every relabeling of voters inside the id pool.

    Every ordered profile over a society from the pool is compared with the
    profile holding the same ballots on the smallest ids, which covers
    permutations within a society and moves to fresh ids alike.
    """
    domain = domain or rule.domain
    w = _anonymity_scan(rule, domain, bounds, bounds.n_max)
    return _result(rule, "anonymity", bounds, domain, w)


def _collapse(rule, domain, bounds, max_size, notes):
    anon = is_anonymous_within(rule, domain, bounds, max_size)
    notes.append("anonymity pre-pass: " + ("passed, societies collapsed to multisets" if anon
                                            else "failed, all id sets enumerated"))
    return anon


# --- ontoness & tops-onliness --------------------------------------------------


def _society_outputs(ev, classes, ids, anonymous):
    return {ev(ids, cs) for cs in _class_vectors(classes.count, len(ids), anonymous)}


def check_ontoness(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    domain, classes = _setup(rule, domain)
    notes: list = []
    anon = _collapse(rule, domain, bounds, bounds.n_max, notes)
    ev = _Eval(rule, classes)
    for s in range(1, bounds.n_max + 1):
        for ids in _societies(bounds, s, anon):
            seen = _society_outputs(ev, classes, ids, anon)
            for a in domain.alternatives:
                if a not in seen:
                    w = Witness("ontoness", society=tuple(ids), alternative=a)
                    return _result(rule, "ontoness", bounds, domain, w, notes)
    return _result(rule, "ontoness", bounds, domain, None, notes)


def audit_key(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> Witness | None:
    """Test that the rule's output depends on ballots only through ``(top, key)``.

    Exhaustive over ordered profiles on the smallest ids when there are at most
    ``EXHAUSTIVE_AUDIT_LIMIT`` of them per size, seeded sampling otherwise.
    Returns a pair of same-class profiles with different outcomes, if any.
    """
    domain, classes = _setup(rule, domain)
    prefs = domain.preferences
    ev = _Eval(rule, classes)
    rng = random.Random(bounds.seed)
    pool = bounds.pool

    def compare(ids, ks):
        profile = Profile._trusted(tuple(zip(ids, (prefs[k] for k in ks))))
        cs = tuple(int(classes.class_of[k]) for k in ks)
        out = rule.evaluate(profile)
        if out != ev(ids, cs):
            return Witness("tops_only", profile, ev.profile(ids, cs), outputs=(out, ev(ids, cs)))
        return None

    for s in range(1, bounds.n_max + 1):
        if len(prefs) ** s <= EXHAUSTIVE_AUDIT_LIMIT:
            ids = pool[:s]
            for ks in itertools.product(range(len(prefs)), repeat=s):
                w = compare(ids, ks)
                if w:
                    return w
    for _ in range(bounds.audit_samples):
        s = rng.randint(1, bounds.n_max)
        ids = tuple(sorted(rng.sample(pool, s)))
        w = compare(ids, tuple(rng.randrange(len(prefs)) for _ in range(s)))
        if w:
            return w
    return None


def check_tops_onliness(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    domain, classes = _setup(rule, domain)
    notes = ["ballot-class key audited"]
    w = audit_key(rule, bounds, domain)
    if w:
        return _result(rule, "tops_only", bounds, domain, w, notes)
    anon = _collapse(rule, domain, bounds, bounds.n_max, notes)
    ev = _Eval(rule, classes)
    for s in range(1, bounds.n_max + 1):
        for ids in _societies(bounds, s, anon):
            first: dict = {}
            for cs in _class_vectors(classes.count, s, anon):
                t = tuple(classes.tops[c] for c in cs)
                if anon:
                    # multisets of classes: compare on the multiset of tops
                    t = tuple(sorted(t, key=domain.alt_index.__getitem__))
                out = ev(ids, cs)
                if t not in first:
                    first[t] = (cs, out)
                elif first[t][1] != out:
                    cs0, out0 = first[t]
                    if anon:
                        cs0, cs = _align_by_tops(cs0, cs, classes)
                    w = Witness("tops_only", ev.profile(ids, cs0), ev.profile(ids, cs), outputs=(out0, out))
                    return _result(rule, "tops_only", bounds, domain, w, notes)
    return _result(rule, "tops_only", bounds, domain, None, notes)


def _align_by_tops(cs0, cs1, classes):
    """Order two class multisets so voters at equal positions share tops."""
    remaining = list(cs1)
    aligned = []
    for c in cs0:
        for k, d in enumerate(remaining):
            if classes.tops[d] == classes.tops[c]:
                aligned.append(remaining.pop(k))
                break
    return tuple(cs0), tuple(aligned)


# --- participation and false-name-proofness -------------------------------------


def check_participation(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    domain, classes = _setup(rule, domain)
    notes: list = ["societies of size 1 skipped"]
    anon = _collapse(rule, domain, bounds, bounds.n_max, notes)
    ev = _Eval(rule, classes)
    for ids, cs in _base_profiles(classes, bounds, anon, range(2, bounds.n_max + 1)):
        a = ev(ids, cs)
        for j in _positions(cs, anon):
            rest_ids = ids[:j] + ids[j + 1:]
            rest_cs = cs[:j] + cs[j + 1:]
            b = ev(rest_ids, rest_cs)
            if b != a and classes.can_prefer(cs[j], b, a):
                p = classes.witness_pref(cs[j], b, a)
                prefs = [classes.reps[c] for c in cs]
                prefs[j] = p
                base = ev.profile(ids, cs, prefs)
                w = Witness("participation", base, base.without_voter(ids[j]), voter=ids[j], outputs=(a, b))
                return _result(rule, "participation", bounds, domain, w, notes)
    return _result(rule, "participation", bounds, domain, None, notes)


def _fnp_scan(rule, domain, bounds, strong: bool):
    classes = ballot_classes(domain, rule.key)
    axiom = "strong_fnp" if strong else "fnp"
    notes: list = []
    anon = _collapse(rule, domain, bounds, bounds.n_max + bounds.n_clone_max, notes)
    ev = _Eval(rule, classes)
    for ids, cs in _base_profiles(classes, bounds, anon):
        a = ev(ids, cs)
        for fresh in _fresh_sets(bounds, ids, bounds.n_clone_max, anon):
            extras = list(_class_vectors(classes.count, len(fresh), anon)) if strong else None
            for j in _positions(cs, anon):
                for extra in extras if strong else [(cs[j],) * len(fresh)]:
                    b = ev(ids + fresh, cs + tuple(extra))
                    if b != a and classes.can_prefer(cs[j], b, a):
                        p = classes.witness_pref(cs[j], b, a)
                        prefs = [classes.reps[c] for c in cs]
                        prefs[j] = p
                        base = ev.profile(ids, cs, prefs)
                        added = [classes.reps[c] for c in extra] if strong else [p] * len(fresh)
                        derived = ev.profile(ids + fresh, cs + tuple(extra), prefs + added)
                        w = Witness(axiom, base, derived, voter=ids[j], clones=tuple(fresh), outputs=(a, b))
                        return _result(rule, axiom, bounds, domain, w, notes)
    return _result(rule, axiom, bounds, domain, None, notes)


def check_fnp(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    """False-name-proofness: clones of a voter's own ballot under fresh ids never help."""
    return _fnp_scan(rule, domain or rule.domain, bounds, strong=False)


def check_strong_fnp(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    """Strong false-name-proofness: no extra ballots of any kind under fresh ids help."""
    return _fnp_scan(rule, domain or rule.domain, bounds, strong=True)


# --- neutrality --------------------------------------------------------------------


def _image_classes(classes: BallotClasses, alt_perm: dict) -> list[dict]:
    """For each class, map every reachable image class to one member producing it."""
    domain = classes.domain
    index = domain.pref_index
    out = [dict() for _ in range(classes.count)]
    for k, p in enumerate(domain.preferences):
        img = index.get(tuple(alt_perm[a] for a in p.order))
        if img is None:
            continue
        c = int(classes.class_of[k])
        d = int(classes.class_of[img])
        if d not in out[c]:
            out[c][d] = k
    return out


def _equivariance(rule, domain, bounds, axiom, perms):
    """``perms`` is a list of (label, alternative map) pairs."""
    classes = ballot_classes(domain, rule.key)
    if len(perms) * len(domain.preferences) > WORK_CAP:
        raise EnumerationCapError(f"{axiom} image tables", len(perms) * len(domain.preferences), WORK_CAP)
    notes: list = []
    anon = _collapse(rule, domain, bounds, bounds.n_max, notes)
    ev = _Eval(rule, classes)
    images = [(label, gamma, _image_classes(classes, gamma)) for label, gamma in perms]
    for ids, cs in _base_profiles(classes, bounds, anon):
        a = ev(ids, cs)
        for label, gamma, img in images:
            want = gamma[a]
            for combo in itertools.product(*(img[c].keys() for c in cs)):
                b = ev(ids, tuple(combo))
                if b != want:
                    prefs = [domain.preferences[img[c][d]] for c, d in zip(cs, combo)]
                    base = ev.profile(ids, cs, prefs)
                    if axiom == "object_neutrality":
                        derived = base.permute_objects(label)
                    else:
                        derived = base.permute_alternatives(label)
                    w = Witness(axiom, base, derived, permutation=dict(label), outputs=(a, b))
                    return _result(rule, axiom, bounds, domain, w, notes)
    return _result(rule, axiom, bounds, domain, None, notes)


def closed_under_relabeling(domain: Domain) -> bool:
    return domain.kind in ("universal", "all")


def check_neutrality(rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    domain = domain or rule.domain
    if not closed_under_relabeling(domain):
        raise DomainError(f"neutrality needs a domain closed under relabeling alternatives, not {domain.kind}")
    perms = [(g, g) for g in domain.alternative_permutations()]
    return _equivariance(rule, domain, bounds, "neutrality", perms)


def check_object_neutrality(rule: RuleSpec, bounds: CheckBounds = CheckBounds(),
                            domain: Domain | None = None) -> CheckResult:
    domain = domain or rule.domain
    perms = []
    for mu in domain.object_permutations():
        perms.append((mu, {s: frozenset(mu[x] for x in s) for s in domain.alternatives}))
    return _equivariance(rule, domain, bounds, "object_neutrality", perms)


CHECKERS = {
    "ontoness": check_ontoness,
    "tops_only": check_tops_onliness,
    "fnp": check_fnp,
    "strong_fnp": check_strong_fnp,
    "participation": check_participation,
    "anonymity": check_anonymity,
    "neutrality": check_neutrality,
    "object_neutrality": check_object_neutrality,
}
AXIOM_ALIASES = {"tops-only": "tops_only", "tops_onliness": "tops_only", "strong-fnp": "strong_fnp",
                 "object-neutrality": "object_neutrality", "onto": "ontoness"}


def check(axiom: str, rule: RuleSpec, bounds: CheckBounds = CheckBounds(), domain: Domain | None = None) -> CheckResult:
    axiom = AXIOM_ALIASES.get(axiom, axiom)
    if axiom not in CHECKERS:
        raise KeyError(f"unknown axiom {axiom!r}; known: {', '.join(AXIOMS)}")
    return CHECKERS[axiom](rule, bounds, domain)


# --- witness replay --------------------------------------------------------------------


def replay(witness: Witness, rule: RuleSpec, domain: Domain | None = None, bounds: CheckBounds | None = None) -> bool:
    """Re-establish a witness from its stored profiles alone."""
    domain = domain or rule.domain
    ax = witness.axiom
    if ax == "ontoness":
        bounds = bounds or CheckBounds()
        classes = ballot_classes(domain, rule.key)
        ev = _Eval(rule, classes)
        ids = tuple(witness.society)
        return witness.alternative not in _society_outputs(ev, classes, ids, anonymous=False)
    base, derived = witness.base, witness.derived
    for prof in (base, derived):
        domain.check_profile(prof)
    a, b = rule.evaluate(base), rule.evaluate(derived)
    if witness.outputs is not None and (a, b) != tuple(witness.outputs):
        return False
    if ax == "tops_only":
        return base.society == derived.society and base.tops() == derived.tops() and a != b
    if ax == "participation":
        v = witness.voter
        return derived == base.without_voter(v) and base[v].prefers(b, a)
    if ax in ("fnp", "strong_fnp"):
        v = witness.voter
        p = base[v]
        added = [i for i in derived.society if i not in base]
        if any(i in base for i in witness.clones) or sorted(added) != sorted(witness.clones) or not added:
            return False
        if any(derived[i] != base[i] for i in base.society):
            return False
        if ax == "fnp" and any(derived[i] != p for i in added):
            return False
        return p.prefers(b, a)
    if ax == "anonymity":
        return derived == base.permute_voters(witness.permutation) and a != b
    if ax == "neutrality":
        return derived == base.permute_alternatives(witness.permutation) and witness.permutation[a] != b
    if ax == "object_neutrality":
        mu = witness.permutation
        return derived == base.permute_objects(mu) and frozenset(mu[x] for x in a) != b
    raise ValueError(f"unknown axiom {ax!r}")


def replay_json(doc: dict, rule: RuleSpec) -> bool:
    """Replay the witness of a serialized :class:`CheckResult`."""
    domain = domain_from_json(doc["domain"])
    witness = Witness.from_json(doc["witness"], domain)
    return replay(witness, rule, domain, CheckBounds.from_json(doc["bounds"]))


def profile_count(domain: Domain, bounds: CheckBounds) -> int:
    """Number of raw profiles within bounds; shown in reports to size the search."""
    pool = len(bounds.pool)
    return sum(math.comb(pool, s) * domain.size ** s for s in range(1, bounds.n_max + 1))
