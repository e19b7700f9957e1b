"""A small finite-domain constraint solver: table constraints, cover constraints,
maintained arc consistency, MRV variable choice and ascending value order.

Domains are bitmasks over value indices ``0..k-1``.  Everything is
deterministic; identical instances produce identical search traces.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceeded


def _bits(mask: int):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass
class SearchStats:
    nodes: int = 0
    backtracks: int = 0
    seconds: float = 0.0


@dataclass
class CSP:
    n_values: int
    names: list = field(default_factory=list)
    domains: list = field(default_factory=list)
    unary: list = field(default_factory=list)
    covers: list = field(default_factory=list)
    # arcs[u][v] = (supports, label); supports[a] is the mask of values of v compatible with u=a
    arcs: list = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def add_variable(self, name, values=None) -> int:
        mask = (1 << self.n_values) - 1 if values is None else sum(1 << v for v in values)
        self.names.append(name)
        self.domains.append(mask)
        self.arcs.append({})
        return len(self.names) - 1

    def restrict(self, var: int, allowed, label: str = "") -> None:
        mask = sum(1 << v for v in allowed)
        self.unary.append((var, mask, label))
        self.domains[var] &= mask

    def add_binary(self, u: int, v: int, allowed, label: str = "") -> None:
        """Allow only the value pairs ``(a, b)`` in ``allowed`` for ``(u, v)``."""
        if u == v:
            self.restrict(u, {a for a, b in allowed if a == b}, label)
            return
        fwd = [0] * self.n_values
        back = [0] * self.n_values
        for a, b in allowed:
            fwd[a] |= 1 << b
            back[b] |= 1 << a
        self._merge(u, v, fwd, label)
        self._merge(v, u, back, label)

    def _merge(self, u, v, supports, label):
        if v in self.arcs[u]:
            old, old_label = self.arcs[u][v]
            supports = [x & y for x, y in zip(old, supports)]
            label = old_label if label in old_label.split("+") else f"{old_label}+{label}"
        self.arcs[u][v] = (supports, label)

    def add_cover(self, group, values, label: str = "") -> None:
        """Every value in ``values`` must be taken by some variable of ``group``."""
        self.covers.append((tuple(group), tuple(values), label))

    # --- propagation -------------------------------------------------------

    def _revise(self, doms, u, v) -> bool:
        supports, _ = self.arcs[u][v]
        dv = doms[v]
        keep = 0
        for a in _bits(doms[u]):
            if supports[a] & dv:
                keep |= 1 << a
        if keep != doms[u]:
            doms[u] = keep
            return True
        return False

    def _covers_ok(self, doms, changed: list) -> bool:
        for group, values, _ in self.covers:
            for val in values:
                bit = 1 << val
                holders = [x for x in group if doms[x] & bit]
                if not holders:
                    return False
                if len(holders) == 1 and doms[holders[0]] != bit:
                    # sole supplier of val: it must take val
                    doms[holders[0]] = bit
                    changed.append(holders[0])
        return True

    def propagate(self, doms, queue) -> bool:
        while True:
            while queue:
                u, v = queue.popleft()
                if self._revise(doms, u, v):
                    if not doms[u]:
                        return False
                    for w in self.arcs[u]:
                        if w != v:
                            queue.append((w, u))
            changed: list = []
            if not self._covers_ok(doms, changed):
                return False
            if not changed:
                return True
            for x in changed:
                for w in self.arcs[x]:
                    queue.append((w, x))

    def _all_arcs(self):
        return deque((u, v) for u in range(len(self.names)) for v in self.arcs[u])

    # --- search --------------------------------------------------------------

    def solutions(self, budget: float | None = None, limit: int | None = None):
        """Yield complete assignments (lists of value indices) in canonical order."""
        start = time.monotonic()
        deadline = None if budget is None else start + budget
        self.stats = SearchStats()
        doms = list(self.domains)
        found = 0
        if not self.propagate(doms, self._all_arcs()):
            self.stats.seconds = time.monotonic() - start
            return
        stack = [doms]
        while stack:
            doms = stack.pop()
            self.stats.nodes += 1
            if deadline is not None and self.stats.nodes % 64 == 0 and time.monotonic() > deadline:
                self.stats.seconds = time.monotonic() - start
                raise BudgetExceeded(f"search exceeded {budget}s after {self.stats.nodes} nodes")
            open_vars = [x for x, d in enumerate(doms) if d & (d - 1)]
            if not open_vars:
                found += 1
                yield [d.bit_length() - 1 for d in doms]
                if limit is not None and found >= limit:
                    break
                continue
            var = min(open_vars, key=lambda x: (_popcount(doms[x]), x))
            children = []
            for a in _bits(doms[var]):
                child = list(doms)
                child[var] = 1 << a
                if self.propagate(child, deque((w, var) for w in self.arcs[var])):
                    children.append(child)
                else:
                    self.stats.backtracks += 1
            stack.extend(reversed(children))
        self.stats.seconds = time.monotonic() - start

    def solve(self, budget: float | None = None):
        for sol in self.solutions(budget, limit=1):
            return sol
        return None

    # --- independent verification ------------------------------------------------

    def violations(self, assignment) -> list[str]:
        """Labels of every constraint the complete ``assignment`` breaks."""
        bad = []
        for var, mask, label in self.unary:
            if not mask >> assignment[var] & 1:
                bad.append(f"{label}: {self.names[var]}")
        for u, row in enumerate(self.arcs):
            for v, (supports, label) in row.items():
                if u < v and not supports[assignment[u]] >> assignment[v] & 1:
                    bad.append(f"{label}: {self.names[u]} / {self.names[v]}")
        for group, values, label in self.covers:
            taken = {assignment[x] for x in group}
            for val in values:
                if val not in taken:
                    bad.append(f"{label}: value {val} unattained")
        return bad
