"""Alternatives, strict preferences, variable-society profiles and preference domains.

Alternatives are plain hashable values.  In the subsets setting an alternative
is a ``frozenset`` of object names (an *object set*); the universe ``2^O`` is
always listed in bitmask order, so ``{}``, ``{x}``, ``{y}``, ``{x,y}``, ``{z}``, ...
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    DomainError,
    EnumerationCapError,
    NotBijectiveError,
    UnknownAlternativeError,
    VoterError,
)

Alternative = Hashable
ObjectSet = frozenset

DEFAULT_CAP = math.factorial(10)
OBJECT_NAMES = "xyzwvutsrq"


def enumeration_cap() -> int:
    """Enumeration cap, overridable through the ``AXIOMLAB_CAP`` environment variable."""
    raw = os.environ.get("AXIOMLAB_CAP")
    return int(raw) if raw else DEFAULT_CAP


def object_names(k: int) -> tuple[str, ...]:
    if k < 1:
        raise ValueError("need at least one object")
    if k <= len(OBJECT_NAMES):
        return tuple(OBJECT_NAMES[:k])
    return tuple(f"o{i}" for i in range(1, k + 1))


def subsets(objects: Sequence[str]) -> tuple[ObjectSet, ...]:
    """All subsets of ``objects`` in bitmask order."""
    objects = tuple(objects)
    out = []
    for mask in range(1 << len(objects)):
        out.append(frozenset(o for b, o in enumerate(objects) if mask >> b & 1))
    return tuple(out)


def fmt_alt(a: Alternative, objects: Sequence[str] | None = None) -> str:
    if isinstance(a, frozenset):
        if not a:
            return "∅"
        key = {o: i for i, o in enumerate(objects)} if objects else None
        items = sorted(a, key=key.__getitem__) if key else sorted(a)
        return "{" + ",".join(items) + "}"
    return str(a)


@dataclass(frozen=True)
class Preference:
    """A strict linear order, stored best-first."""

    order: tuple
    rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(self.order)
        rank = {a: r for r, a in enumerate(order, start=1)}
        if len(rank) != len(order) or not order:
            raise ValueError("a preference must list distinct alternatives")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rank", rank)

    @property
    def top(self):
        return self.order[0]

    @property
    def bottom(self):
        return self.order[-1]

    def rank_of(self, a) -> int:
        try:
            return self.rank[a]
        except KeyError:
            raise UnknownAlternativeError(a) from None

    def prefers(self, a, b) -> bool:
        return self.rank_of(a) < self.rank_of(b)

    def weakly_prefers(self, a, b) -> bool:
        return self.rank_of(a) <= self.rank_of(b)

    def __len__(self):
        return len(self.order)

    def __str__(self):
        return " > ".join(fmt_alt(a) for a in self.order)


def prefers(p: Preference, a, b) -> bool:
    return p.prefers(a, b)


def weakly_prefers(p: Preference, a, b) -> bool:
    return p.weakly_prefers(a, b)


def enumerate_linear_orders(alts: Sequence, cap: int | None = None) -> list[Preference]:
    """Every strict order over ``alts``, lexicographic in the given alternative order."""
    alts = tuple(alts)
    if not alts:
        raise ValueError("need at least one alternative")
    cap = enumeration_cap() if cap is None else cap
    size = math.factorial(len(alts))
    if size > cap:
        raise EnumerationCapError(f"linear orders over {len(alts)} alternatives", size, cap)
    return [Preference(p) for p in itertools.permutations(alts)]


def objects_of(p: Preference) -> frozenset:
    """The object universe of a preference over ``2^O`` (union of all its alternatives)."""
    return frozenset().union(*p.order)


def separable_by_definition(p: Preference) -> bool:
    empty = frozenset()
    for s in p.order:
        for x in objects_of(p) - s:
            if p.prefers(s | {x}, s) != p.prefers(frozenset([x]), empty):
                return False
    return True


def separable_by_top(p: Preference) -> bool:
    """Good objects are exactly the members of the top set."""
    top = p.top
    for s in p.order:
        for x in objects_of(p) - s:
            if p.prefers(s | {x}, s) != (x in top):
                return False
    return True


def is_separable(p: Preference) -> bool:
    result = separable_by_definition(p)
    if __debug__:
        assert result == separable_by_top(p), f"separability criteria disagree on {p}"
    return result


def enumerate_separable(objects: Sequence[str], cap: int | None = None) -> list[Preference]:
    if len(objects) < 2:
        raise ValueError("the subsets domain needs at least two objects")
    cap = enumeration_cap() if cap is None else cap
    return list(_separable_orders(tuple(objects), cap))


@lru_cache(maxsize=16)
def _separable_orders(objects: tuple, cap: int) -> tuple[Preference, ...]:
    return tuple(p for p in enumerate_linear_orders(subsets(objects), cap) if is_separable(p))


def separable_representative(top: ObjectSet, objects: Sequence[str]) -> Preference:
    """Canonical separable order with the given top.

    Subsets are scored by ``|S & top| - |S - top|``; ties keep bitmask order.
    """
    top = frozenset(top)
    universe = subsets(objects)
    if top not in universe:
        raise DomainError(f"{fmt_alt(top)} is not a subset of {list(objects)}")
    order = sorted(universe, key=lambda s: -(len(s & top) - len(s - top)))
    return Preference(order)


def _check_bijection(mapping: Mapping, universe: Iterable | None = None) -> None:
    values = list(mapping.values())
    if len(set(values)) != len(values) or set(values) != set(mapping):
        raise NotBijectiveError(f"not a bijection: {mapping!r}")
    if universe is not None and set(mapping) != set(universe):
        raise NotBijectiveError("permutation does not cover the alternative universe")


def permute_alternatives(p: Preference, gamma: Mapping) -> Preference:
    """``P^gamma``: the rank of ``gamma(A)`` in the result equals the rank of ``A`` in ``p``."""
    _check_bijection(gamma, p.order)
    return Preference(tuple(gamma[a] for a in p.order))


def object_permutation_on_sets(mu: Mapping[str, str], universe: Sequence[ObjectSet]) -> dict:
    _check_bijection(mu)
    return {s: frozenset(mu[x] for x in s) for s in universe}


def permute_objects(p: Preference, mu: Mapping[str, str]) -> Preference:
    _check_bijection(mu, objects_of(p))
    return Preference(tuple(frozenset(mu[x] for x in s) for s in p.order))


class Profile:
    """Preferences of a finite non-empty society, keyed by positive voter ids.

    Profiles are immutable; every modifier returns a new profile.
    """

    __slots__ = ("_ballots", "_hash")

    def __init__(self, assignment: Mapping[int, Preference] | Iterable[tuple[int, Preference]]):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        ballots = tuple(sorted(items, key=lambda kv: kv[0]))
        if not ballots:
            raise VoterError("a society must be non-empty")
        ids = [i for i, _ in ballots]
        if len(set(ids)) != len(ids):
            raise VoterError(f"duplicate voter ids in {ids}")
        for i, p in ballots:
            if not isinstance(i, int) or isinstance(i, bool) or i < 1:
                raise VoterError(f"voter ids must be positive integers, got {i!r}")
            if not isinstance(p, Preference):
                raise TypeError(f"voter {i} holds {p!r}, not a Preference")
        universe = set(ballots[0][1].order)
        for _, p in ballots[1:]:
            if len(p) != len(universe) or set(p.order) != universe:
                raise DomainError("all preferences in a profile must share one alternative set")
        self._ballots = ballots
        self._hash = None

    @classmethod
    def _trusted(cls, ballots: tuple) -> "Profile":
        obj = cls.__new__(cls)
        obj._ballots = ballots
        obj._hash = None
        return obj

    @property
    def ballots(self) -> tuple:
        return self._ballots

    @property
    def society(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._ballots)

    def preferences(self) -> tuple[Preference, ...]:
        return tuple(p for _, p in self._ballots)

    def tops(self) -> tuple:
        return tuple(p.order[0] for _, p in self._ballots)

    def items(self):
        return iter(self._ballots)

    def __getitem__(self, i: int) -> Preference:
        for j, p in self._ballots:
            if j == i:
                return p
        raise KeyError(i)

    def __contains__(self, i) -> bool:
        return any(j == i for j, _ in self._ballots)

    def __iter__(self) -> Iterator[int]:
        return (i for i, _ in self._ballots)

    def __len__(self):
        return len(self._ballots)

    def __eq__(self, other):
        return isinstance(other, Profile) and self._ballots == other._ballots

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._ballots)
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{i}: {p}" for i, p in self._ballots)
        return f"Profile({{{inner}}})"

    def with_voter(self, i: int, p: Preference) -> "Profile":
        if i in self:
            raise VoterError(f"voter {i} already in society {self.society}")
        return Profile(self._ballots + ((i, p),))

    def without_voter(self, i: int) -> "Profile":
        if i not in self:
            raise VoterError(f"voter {i} not in society {self.society}")
        if len(self) == 1:
            raise VoterError("cannot remove the last voter")
        return Profile._trusted(tuple(b for b in self._ballots if b[0] != i))

    def permute_voters(self, sigma: Mapping[int, int]) -> "Profile":
        """Relabel voters: voter ``sigma(i)`` holds what ``i`` held; unmapped ids stay put."""
        _check_bijection(sigma)
        return Profile({sigma.get(i, i): p for i, p in self._ballots})

    def permute_alternatives(self, gamma: Mapping) -> "Profile":
        return Profile({i: permute_alternatives(p, gamma) for i, p in self._ballots})

    def permute_objects(self, mu: Mapping[str, str]) -> "Profile":
        return Profile({i: permute_objects(p, mu) for i, p in self._ballots})


DOMAIN_KINDS = ("universal", "all", "separable", "separable_plus")


@dataclass(frozen=True)
class Domain:
    """A finite preference domain.

    ``universal``: all orders over unstructured ``alternatives``.
    ``all``: all orders over ``2^objects``.  ``separable``: the separable ones.
    ``separable_plus``: separable orders together with the ``extra`` preferences.
    """

    kind: str
    alternatives: tuple
    objects: tuple | None = None
    extra: tuple = ()

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.kind != "universal" and not self.objects:
            raise DomainError(f"{self.kind} domain needs an object universe")

    @property
    def is_subsets(self) -> bool:
        return self.objects is not None

    @property
    def full_set(self) -> ObjectSet:
        return frozenset(self.objects)

    @property
    def size(self) -> int:
        return len(self.preferences)

    @cached_property
    def alt_index(self) -> dict:
        return {a: k for k, a in enumerate(self.alternatives)}

    @cached_property
    def preferences(self) -> tuple[Preference, ...]:
        return _domain_preferences(self)

    @cached_property
    def pref_index(self) -> dict:
        return {p.order: k for k, p in enumerate(self.preferences)}

    @cached_property
    def rank_matrix(self) -> np.ndarray:
        """``rank_matrix[k, a]`` is the rank of alternative index ``a`` in preference ``k``."""
        idx = self.alt_index
        mat = np.empty((len(self.preferences), len(self.alternatives)), dtype=np.int16)
        for k, p in enumerate(self.preferences):
            for r, a in enumerate(p.order):
                mat[k, idx[a]] = r
        return mat

    def contains(self, p: Preference) -> bool:
        if len(p) != len(self.alternatives) or set(p.order) != set(self.alternatives):
            return False
        if self.kind in ("universal", "all"):
            return True
        if is_separable(p):
            return True
        return self.kind == "separable_plus" and p in self.extra

    def check_profile(self, profile: Profile) -> None:
        for i, p in profile.items():
            if not self.contains(p):
                raise DomainError(f"voter {i}'s preference {p} is not in the {self.kind} domain")

    def object_permutations(self) -> list[dict]:
        if not self.is_subsets:
            raise DomainError("object permutations need a subsets domain")
        return [dict(zip(self.objects, img)) for img in itertools.permutations(self.objects)]

    def alternative_permutations(self, cap: int | None = None) -> list[dict]:
        cap = enumeration_cap() if cap is None else cap
        size = math.factorial(len(self.alternatives))
        if size > cap:
            raise EnumerationCapError("alternative permutations", size, cap)
        return [dict(zip(self.alternatives, img)) for img in itertools.permutations(self.alternatives)]

    def describe(self) -> str:
        if self.kind == "universal":
            return f"universal over {len(self.alternatives)} alternatives"
        base = f"{self.kind} orders over 2^{{{','.join(self.objects)}}}"
        return base + (f" (+{len(self.extra)} extra)" if self.extra else "")


@lru_cache(maxsize=None)
def _domain_preferences(domain: Domain) -> tuple[Preference, ...]:
    if domain.kind in ("universal", "all"):
        return tuple(enumerate_linear_orders(domain.alternatives))
    seps = enumerate_separable(domain.objects)
    if domain.kind == "separable":
        return tuple(seps)
    known = set(seps)
    extra = [p for p in domain.extra if p not in known]
    return tuple(seps) + tuple(dict.fromkeys(extra))


def universal_domain(alternatives: Sequence | int) -> Domain:
    if isinstance(alternatives, int):
        alternatives = tuple("abcdefghij"[:alternatives]) if alternatives <= 10 else tuple(range(alternatives))
    return Domain("universal", tuple(alternatives))


def subsets_domain(objects: Sequence[str] | int, kind: str = "all", extra: Iterable[Preference] = ()) -> Domain:
    if isinstance(objects, int):
        objects = object_names(objects)
    objects = tuple(objects)
    if len(objects) < 2:
        raise DomainError("the subsets domain needs at least two objects")
    extra = tuple(extra)
    if extra and kind != "separable_plus":
        raise DomainError("extra preferences only make sense for separable_plus")
    return Domain(kind, subsets(objects), objects, extra)


def separable_plus(objects: Sequence[str] | int, *extra: Preference) -> Domain:
    return subsets_domain(objects, "separable_plus", extra)


# JSON encoding.  Preferences are best-first arrays, object sets are sorted name
# arrays, profiles map voter ids (as strings) to preferences.


def alt_to_json(a, domain: Domain | None = None):
    if isinstance(a, frozenset):
        if domain is not None and domain.objects:
            pos = {o: i for i, o in enumerate(domain.objects)}
            return sorted(a, key=pos.__getitem__)
        return sorted(a)
    return a


def alt_from_json(value, domain: Domain):
    if domain.is_subsets:
        if not isinstance(value, list):
            raise DomainError(f"expected an object-name array, got {value!r}")
        s = frozenset(value)
        if len(s) != len(value) or not s <= domain.full_set:
            raise DomainError(f"{value!r} is not a subset of {list(domain.objects)}")
        return s
    if value not in domain.alt_index:
        raise UnknownAlternativeError(value)
    return value


def preference_to_json(p: Preference, domain: Domain | None = None) -> list:
    return [alt_to_json(a, domain) for a in p.order]


def preference_from_json(value, domain: Domain) -> Preference:
    p = Preference(tuple(alt_from_json(a, domain) for a in value))
    if len(p) != len(domain.alternatives):
        raise DomainError(f"preference ranks {len(p)} of {len(domain.alternatives)} alternatives")
    return p


def domain_to_json(domain: Domain) -> dict:
    doc = {"kind": domain.kind}
    if domain.is_subsets:
        doc["objects"] = list(domain.objects)
    else:
        doc["alternatives"] = list(domain.alternatives)
    if domain.extra:
        doc["extra"] = [preference_to_json(p, domain) for p in domain.extra]
    return doc


def domain_from_json(doc: dict) -> Domain:
    kind = doc["kind"]
    if kind == "universal":
        return universal_domain(tuple(doc["alternatives"]))
    base = subsets_domain(tuple(doc["objects"]), "all")
    extra = tuple(preference_from_json(p, base) for p in doc.get("extra", ()))
    return subsets_domain(tuple(doc["objects"]), kind, extra)


def profile_to_json(profile: Profile, domain: Domain | None = None) -> dict:
    return {str(i): preference_to_json(p, domain) for i, p in profile.items()}


def profile_from_json(doc: dict, domain: Domain) -> Profile:
    try:
        return Profile({int(i): preference_from_json(v, domain) for i, v in doc.items()})
    except ValueError as exc:
        if isinstance(exc, (DomainError, VoterError)):
            raise
        raise DomainError(f"malformed profile: {exc}") from exc


def profile_document(profile: Profile, domain: Domain) -> dict:
    """Self-contained fixture: the domain plus the profile."""
    return {"domain": domain_to_json(domain), "profile": profile_to_json(profile, domain)}


def read_profile_document(doc: dict) -> tuple[Profile, Domain]:
    domain = domain_from_json(doc["domain"])
    return profile_from_json(doc["profile"], domain), domain
