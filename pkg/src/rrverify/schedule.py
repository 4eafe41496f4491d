"""Round-Robin delay accounting and a checker for bounded Round-Robin paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidSchedule
from .model import Program, ProgramState


@dataclass(frozen=True)
class ScheduleCost:
    delays: int
    rounds: int


def delay_cost(f: Sequence[int], n: int) -> ScheduleCost:
    """Delays and rounds used by the scheduling sequence ``f`` over ``n`` threads.

    Thread 0 is due first; every skipped turn counts as one delay, including
    turns skipped before the first step.
    """
    if n < 1:
        raise InvalidSchedule("thread count must be positive")
    for i, t in enumerate(f):
        if not 0 <= t < n:
            raise InvalidSchedule(f"entry {i} = {t} outside [0,{n})")
    if not f:
        return ScheduleCost(0, 0)
    dp = f[0]
    for prev, cur in zip(f, f[1:]):
        dp += (cur - prev - 1) % n
    total = len(f) + dp
    return ScheduleCost(dp, -(-total // n))


@dataclass
class PathCheck:
    ok: bool
    cost: ScheduleCost | None = None
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_rr_path(p: Program, path: Sequence[ProgramState], f: Sequence[int],
                     r: int, d: int) -> PathCheck:
    """Check that ``path`` is an execution of ``p`` under schedule ``f`` within ``r`` rounds and ``d`` delays."""
    if len(path) != len(f) + 1:
        raise InvalidSchedule(f"path has {len(path)} states but schedule has {len(f)} entries")
    problems = []
    try:
        cost = delay_cost(f, p.n)
    except InvalidSchedule as e:
        return PathCheck(False, None, [str(e)])
    if path[0] not in p.initial:
        problems.append("first state is not initial")
    for i, t in enumerate(f):
        if path[i + 1] not in p.successors(path[i], t):
            problems.append(f"step {i} is not a move of thread {t}")
    if cost.delays > d:
        problems.append(f"uses {cost.delays} delays, bound is {d}")
    if cost.rounds > r:
        problems.append(f"uses {cost.rounds} rounds, bound is {r}")
    return PathCheck(not problems, cost, problems)
