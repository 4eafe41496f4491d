"""Reference engines: free-interleaving search, from-scratch bounded Round-Robin
grids, an eager-closure variant of the explorer, and a delay-bounded bug finder.

:func:`rr_reach` shares no code with the explorer's kernel so that the two can
check each other.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable

from .abstraction import TRUE, Abstraction, Property, identity_abstraction
from .errors import ResourceLimit
from .explore import (SAFE, UNKNOWN, VIOLATION, Explorer, Limits, VerdictReport, Witness,
                      witness_of, _Found)
from .model import Program, ProgramState


@dataclass
class FreeResult:
    states: set
    violation: tuple | None = None  # path of program states ending in the bad one
    capped: bool = False

    @property
    def verdict(self) -> str:
        if self.violation is not None:
            return VIOLATION
        return UNKNOWN if self.capped else SAFE


def free_bfs(p: Program, prop: Property = TRUE, abs_: Abstraction | None = None,
             state_cap: int | None = None,
             within: Callable[[ProgramState], bool] | None = None) -> FreeResult:
    """Breadth-first search over all interleavings.

    States failing ``within`` are not entered (used to cut infinite models
    down to a bounded-integer slice); ``state_cap`` stops the search.
    """
    alpha = abs_.alpha if abs_ is not None else (lambda s: s)
    parent: dict = {}
    work = deque()
    for s in sorted(p.initial):
        parent[s] = None
        work.append(s)
    while work:
        s = work.popleft()
        if prop.violated_by(alpha(s)):
            path = [s]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return FreeResult(set(parent), tuple(reversed(path)))
        for t in range(p.n):
            for s2 in p.successors(s, t):
                if s2 in parent or (within is not None and not within(s2)):
                    continue
                if state_cap is not None and len(parent) >= state_cap:
                    return FreeResult(set(parent), None, True)
                parent[s2] = s
                work.append(s2)
    return FreeResult(set(parent))


@dataclass
class GridCell:
    r: int
    d: int
    states: frozenset
    abs_states: frozenset
    image_calls: int


def rr_reach(p: Program, r: int, d: int) -> tuple[frozenset, int]:
    """Program states reachable within ``r`` rounds and ``d`` delays, and the image calls spent.

    Searches (state, finder, rounds, delays) tuples from scratch, with
    delays taken at any point.
    """
    n = p.n
    start = [(s, n - 1, 0, 0) for s in p.initial]
    seen = set(start)
    work = deque(start)
    calls = 0
    while work:
        s, f, rt, dt = work.popleft()
        t = (f + 1) % n
        rt2 = rt + 1 if t == 0 else rt
        if rt2 <= r:
            calls += 1
            for s2 in p.successors(s, t):
                x = (s2, t, rt2, dt)
                if x not in seen:
                    seen.add(x)
                    work.append(x)
            if dt < d:
                x = (s, t, rt2, dt + 1)
                if x not in seen:
                    seen.add(x)
                    work.append(x)
    return frozenset(x[0] for x in seen), calls


def naive_grid(p: Program, abs_: Abstraction | None, r_max: int, d_max: int) -> dict:
    """Every cell (r, d) with r <= r_max and d <= d_max, each explored from the initial states."""
    abs_ = abs_ or identity_abstraction(p)
    grid = {}
    for r in range(r_max + 1):
        for d in range(d_max + 1):
            states, calls = rr_reach(p, r, d)
            grid[(r, d)] = GridCell(r, d, states, frozenset(abs_.alpha(s) for s in states), calls)
    return grid


def naive_replay(p: Program, abs_: Abstraction | None, cells) -> int:
    """Image calls to recompute each visited (r, d) from scratch, as a non-frontier engine would."""
    return sum(rr_reach(p, r, d)[1] for r, d in cells)


def _full_closure(ex: Explorer) -> tuple[bool, int]:
    """Whether the abstract reach set is closed under every action, and how many checks it took.

    Respectful actions are followed from reached concrete states; disrespectful
    ones through the abstraction's enumerators.
    """
    p, abs_ = ex.p, ex.abs
    A = ex.core.abs_states
    checks = 0
    for s in ex.reached_states():
        for t in range(p.n):
            checks += 1
            for s2 in p.successors(s, t):
                if abs_.alpha(s2) not in A:
                    return False, checks
    for a in list(A):
        for x in abs_.disrespects:
            for t in range(p.n):
                checks += 1
                if any(a2 not in A for a2 in abs_.enumerators[x](a, t, p.n)):
                    return False, checks
    return True, checks


def ai_style_verify(p: Program, abs_: Abstraction | None = None, prop: Property = TRUE,
                    limits: Limits = Limits(), kernel=None) -> VerdictReport:
    """Eager-closure baseline: the same bound schedule as the explorer, with a full
    closure test after every bound increase; safe as soon as the set is closed."""
    ex = Explorer(p, abs_, prop, limits, kernel=kernel)
    checks = 0
    n = p.n

    def closed():
        nonlocal checks
        ok, c = _full_closure(ex)
        checks += c
        return ok

    def report(verdict, reason=None, witness=None):
        rep = ex._report(verdict, reason, checks, None, witness)
        return rep

    try:
        ex.seed()
        if closed():
            return report(SAFE)
        while True:
            while True:
                if limits.max_r is not None and ex.r + 2 > limits.max_r:
                    raise ResourceLimit("max-r")
                before = ex.core.new_abs
                ex.raise_rounds(ex.r + 2)
                if closed():
                    return report(SAFE)
                if ex.core.new_abs == before:
                    break
            plateau = 0
            restart = False
            while plateau < n - 1:
                if limits.max_d is not None and ex.d + 1 > limits.max_d:
                    raise ResourceLimit("max-d")
                before = ex.core.new_abs
                ex.raise_delays(ex.d + 1)
                if closed():
                    return report(SAFE)
                if ex.core.new_abs != before:
                    restart = True
                    break
                plateau += 1
            if not restart:
                return report(UNKNOWN, "not-closed")
    except _Found as f:
        return report(VIOLATION, witness=witness_of(f.node))
    except ResourceLimit as e:
        return report(UNKNOWN, e.reason)


@dataclass
class TestResult:
    found: bool
    cell: tuple[int, int] | None = None
    witness: Witness | None = None
    cells_tried: list = field(default_factory=list)
    image_calls: int = 0
    elapsed: float = 0.0

    __test__ = False  # not a pytest class


def grid_order(r_max: int, d_max: int):
    """Cells by increasing r + d; within a diagonal, more delays first."""
    for total in range(r_max + d_max + 1):
        for d in range(min(total, d_max), -1, -1):
            r = total - d
            if r <= r_max:
                yield r, d


def delay_bounded_test(p: Program, prop: Property, abs_: Abstraction | None = None,
                       r_max: int = 8, d_max: int = 8, kernel=None) -> TestResult:
    """Look for a violation cell by cell, without any convergence test."""
    started = time.monotonic()
    res = TestResult(False)
    for r, d in grid_order(r_max, d_max):
        res.cells_tried.append((r, d))
        ex = Explorer(p, abs_, prop, kernel=kernel)
        try:
            ex.seed()
            if r:
                ex.raise_rounds(r)
            if d:
                ex.raise_delays(d)
        except _Found as f:
            res.found = True
            res.cell = (r, d)
            res.witness = witness_of(f.node)
        res.image_calls += ex.core.image_calls
        if res.found:
            break
    res.elapsed = time.monotonic() - started
    return res


@dataclass
class MonotonicityCheck:
    contained: bool
    witness: Hashable | None = None
    smaller: frozenset = frozenset()
    larger: frozenset = frozenset()


def check_rr_nonmonotonicity(family: Callable[[int], Program], r: int, d: int, n: int,
                             project: Callable[[ProgramState], Hashable] = lambda s: s.shared
                             ) -> MonotonicityCheck:
    """Compare projected bounded reach for ``n`` and ``n + 1`` threads.

    ``contained`` is False when some projected state reachable with ``n``
    threads is not reachable with ``n + 1``; ``witness`` is one such state.
    """
    small = frozenset(project(s) for s in rr_reach(family(n), r, d)[0])
    large = frozenset(project(s) for s in rr_reach(family(n + 1), r, d)[0])
    missing = sorted(small - large, key=repr)
    return MonotonicityCheck(not missing, missing[0] if missing else None, small, large)
