"""Delay-unbounded exploration: grow round and delay bounds until the abstract reach set stops changing.

The engine raises the round bound (two rounds per step) until a step finds
no new abstract state, then raises the delay bound one at a time.  A new
abstract state during the delay phase sends it back to raising rounds.
Once ``n - 1`` delay steps in a row add nothing, the abstract reach set is
tested for closure under the abstraction's disrespectful actions.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from . import kernel as _kernel
from .abstraction import TRUE, Abstraction, Property, closure_test, identity_abstraction
from .errors import ResourceLimit
from .model import Program, ProgramState

SAFE = "safe"
VIOLATION = "violation"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SchedState:
    """A program state plus scheduling metadata; equality ignores rounds and delays taken."""

    prog: ProgramState
    finder: int
    rt: int = field(default=0, compare=False)
    dt: int = field(default=0, compare=False)


class ImageCounter:
    def __init__(self):
        self.calls = 0


def initial_sched_states(p: Program) -> list[SchedState]:
    return [SchedState(s, p.n - 1, 0, 0) for s in sorted(p.initial)]


def image(p: Program, u: SchedState, counter: ImageCounter | None = None) -> set[SchedState]:
    """Successors of ``u`` when the thread after its finder takes one step."""
    if counter is not None:
        counter.calls += 1
    t = (u.finder + 1) % p.n
    rt = u.rt + 1 if t == 0 else u.rt
    return {SchedState(s2, t, rt, u.dt) for s2 in p.successors(u.prog, t)}


class PropertyViolation(Exception):
    def __init__(self, state: SchedState, path: list[SchedState]):
        self.state = state
        self.path = path
        super().__init__(f"property violated at {state.prog!r}")


def finish_rounds(p: Program, s: SchedState, r: int, prop: Property = TRUE,
                  abs_: Abstraction | None = None,
                  counter: ImageCounter | None = None) -> set[SchedState]:
    """All states reachable from ``s`` without delays within ``r`` rounds.

    Raises :class:`PropertyViolation` with the path from ``s`` when a reached
    state's abstraction violates ``prop``.
    """
    alpha = abs_.alpha if abs_ is not None else (lambda x: x)
    last = p.n - 1
    parent = {s: None}
    reached = set()
    work = deque([s])
    while work:
        u = work.popleft()
        if prop.violated_by(alpha(u.prog)):
            path = []
            v = u
            while v is not None:
                path.append(v)
                v = parent[v]
            raise PropertyViolation(u, path[::-1])
        reached.add(u)
        if u.finder < last or u.rt < r:
            for v in image(p, u, counter):
                if v not in parent:
                    parent[v] = u
                    work.append(v)
    return reached


class ReachSet:
    """Reached scheduled states; the metadata kept is that of the first insertion."""

    def __init__(self, abs_: Abstraction):
        self.abs = abs_
        self.states: dict[SchedState, SchedState] = {}
        self.abs_states: set = set()
        self.round_index: dict[int, list[SchedState]] = {}
        self.delay_index: dict[int, list[SchedState]] = {}

    def __contains__(self, u):
        return u in self.states

    def __len__(self):
        return len(self.states)


@dataclass(frozen=True)
class MergeResult:
    inserted: int
    new_abstract: bool


def merge_into(rs: ReachSet, new_states: Iterable[SchedState]) -> MergeResult:
    inserted = 0
    grew = False
    for u in new_states:
        if u in rs.states:
            continue
        rs.states[u] = u
        inserted += 1
        rs.round_index.setdefault(u.rt, []).append(u)
        rs.delay_index.setdefault(u.dt, []).append(u)
        a = rs.abs.alpha(u.prog)
        if a not in rs.abs_states:
            rs.abs_states.add(a)
            grew = True
    return MergeResult(inserted, grew)


@dataclass(frozen=True)
class Limits:
    max_r: int | None = None
    max_d: int | None = None
    max_states: int | None = None
    timeout: float | None = None  # seconds


@dataclass(frozen=True)
class Witness:
    schedule: tuple[int, ...]
    states: tuple[ProgramState, ...]
    rounds: int
    delays: int


@dataclass(frozen=True)
class Checkpoint:
    r: int
    d: int
    abs_count: int
    image_calls: int
    states: frozenset | None = None


@dataclass
class VerdictReport:
    verdict: str
    abs_states: frozenset
    r_max: int
    d_max: int
    image_calls_total: int
    image_calls_pre_plateau: int
    image_calls_final_plateau: int
    closure_checks: int = 0
    elapsed: float = 0.0
    witness: Witness | None = None
    reason: str | None = None
    counterexample: tuple | None = None
    checkpoints: list[Checkpoint] = field(default_factory=list)
    state_count: int = 0
    kernel: str = ""

    @property
    def abs_state_count(self) -> int:
        return len(self.abs_states)


def witness_of(node) -> Witness:
    chain = []
    v = node
    while v is not None:
        chain.append(v)
        v = v.parent
    chain.reverse()
    schedule = []
    states = [chain[0].prog]
    for v in chain[1:]:
        if v.via >= 0:
            schedule.append(v.via)
            states.append(v.prog)
    return Witness(tuple(schedule), tuple(states), node.rt, node.dt)


class _Found(Exception):
    def __init__(self, node):
        self.node = node


class Explorer:
    """Incremental bounded Round-Robin exploration with frontier expansion.

    After every bound change the reached program states are exactly those
    reachable within the current (r, d) bounds.
    """

    def __init__(self, p: Program, abs_: Abstraction | None = None, prop: Property = TRUE,
                 limits: Limits = Limits(), trace: bool = False, kernel=None):
        self.p = p
        self.abs = abs_ or identity_abstraction(p)
        self.prop = prop
        self.limits = limits
        self.trace = trace
        impl = kernel or _kernel
        self.kernel_name = impl.IMPLEMENTATION
        self.started = time.monotonic()
        deadline = self.started + limits.timeout if limits.timeout is not None else 0.0
        self.core = impl.ReachCore(p.n, p.successors, self.abs.alpha, prop.violated_by,
                                   limits.max_states or 0, deadline)
        self.r = 0
        self.d = 0
        self.checkpoints: list[Checkpoint] = []
        self.seeded = False
        # image calls made before the final plateau began
        self.calls_before_plateau = 0

    def _finish(self, starts, bound):
        if starts:
            v = self.core.finish_rounds(starts, bound)
            if v is not None:
                raise _Found(v)

    def _checkpoint(self):
        states = None
        if self.trace:
            states = frozenset(k[0] for k in self.core.table)
        self.checkpoints.append(Checkpoint(self.r, self.d, len(self.core.abs_states),
                                           self.core.image_calls, states))

    def seed(self):
        core = self.core
        for s in sorted(self.p.initial):
            v = core.insert(s, self.p.n - 1, 0, 0, None, -1)
            if v is not None and core.is_bad(v.absval):
                raise _Found(v)
        self.seeded = True
        self._checkpoint()

    def _delay_level(self, k):
        starts = []
        for node in list(self.core.by_delay.get(k, ())):
            v = self.core.delay(node, self.r)
            if v is not None:
                starts.append(v)
        self._finish(starts, self.r)

    def raise_rounds(self, new_r: int):
        core = self.core
        frontier = [v for v in core.by_round.get(self.r, ()) if v.live and not v.expanded]
        self.r = new_r
        self._finish(frontier, new_r)
        # delays that were blocked by the old round bound, and delays of states found just now
        for k in range(self.d):
            self._delay_level(k)
        self._checkpoint()

    def raise_delays(self, new_d: int):
        for k in range(self.d, new_d):
            self.d = k + 1
            self._delay_level(k)
        self._checkpoint()

    def reached_states(self) -> set:
        return {k[0] for k in self.core.table}

    def run(self) -> VerdictReport:
        """Run to a verdict."""
        closure_checks = 0
        counterexample = None
        lim = self.limits
        n = self.p.n
        try:
            if not self.seeded:
                self.seed()
            while True:
                while True:
                    if lim.max_r is not None and self.r + 2 > lim.max_r:
                        raise ResourceLimit("max-r")
                    before = self.core.new_abs
                    self.raise_rounds(self.r + 2)
                    if self.core.new_abs == before:
                        break
                    self.calls_before_plateau = self.core.image_calls
                plateau = 0
                restart = False
                while plateau < n - 1:
                    if lim.max_d is not None and self.d + 1 > lim.max_d:
                        raise ResourceLimit("max-d")
                    before = self.core.new_abs
                    self.raise_delays(self.d + 1)
                    if self.core.new_abs != before:
                        self.calls_before_plateau = self.core.image_calls
                        restart = True
                        break
                    plateau += 1
                if not restart:
                    break
            res = closure_test(self.core.abs_states, self.abs, self.p)
            closure_checks = res.checks
            if res.closed:
                verdict, reason = SAFE, None
            else:
                verdict, reason = UNKNOWN, "not-closed"
                counterexample = res.counterexample
            return self._report(verdict, reason, closure_checks, counterexample)
        except _Found as f:
            return self._report(VIOLATION, None, closure_checks, None, witness_of(f.node))
        except ResourceLimit as e:
            return self._report(UNKNOWN, e.reason, closure_checks, None)

    def _report(self, verdict, reason, closure_checks, counterexample, witness=None):
        core = self.core
        total = core.image_calls
        return VerdictReport(
            verdict=verdict,
            abs_states=frozenset(core.abs_states),
            r_max=self.r,
            d_max=self.d,
            image_calls_total=total,
            image_calls_pre_plateau=self.calls_before_plateau,
            image_calls_final_plateau=total - self.calls_before_plateau,
            closure_checks=closure_checks,
            elapsed=time.monotonic() - self.started,
            witness=witness,
            reason=reason,
            counterexample=counterexample,
            checkpoints=list(self.checkpoints),
            state_count=core.size,
            kernel=self.kernel_name,
        )


def druba(p: Program, abs_: Abstraction | None = None, prop: Property = TRUE,
          limits: Limits = Limits(), trace: bool = False, kernel=None) -> VerdictReport:
    """Decide ``prop`` for all interleavings of ``p``: safe, violation (with witness) or unknown."""
    return Explorer(p, abs_, prop, limits, trace, kernel).run()
