"""Asynchronous shared-memory programs and their single-thread step semantics.

A program state is a shared value plus one local value per thread.  A step is
taken by exactly one thread: it may change the shared value and its own local
value, never another thread's.  Every thread's transition relation is total:
when none of a thread's actions is enabled, the thread stutters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence


class ProgramState(NamedTuple):
    shared: Hashable
    locals: tuple

    def with_local(self, t: int, shared: Hashable, local: Hashable) -> "ProgramState":
        loc = self.locals
        return ProgramState(shared, loc[:t] + (local,) + loc[t + 1:])


Effect = Callable[[Hashable, Hashable], Iterable[tuple]]


@dataclass(frozen=True)
class Action:
    """One action of a thread procedure.

    ``effect(shared, local)`` yields ``(shared', local')`` pairs; an empty
    result means the action is disabled there.  ``shared_refs`` and
    ``local_refs`` list the domain symbols a table-driven rule mentions, so
    that :func:`validate_program` can check them against declared domains.
    """

    id: str
    effect: Effect
    shared_refs: tuple = ()
    local_refs: tuple = ()
    line: int | None = None

    def fire(self, shared, local) -> list[tuple]:
        return list(self.effect(shared, local))


@dataclass(frozen=True)
class Thread:
    name: str
    actions: tuple[Action, ...]
    local_domain: int | None = None


@dataclass(frozen=True)
class Program:
    threads: tuple[Thread, ...]
    initial: frozenset
    name: str = "program"
    shared_domain: int | None = None
    # action id -> Action, over all threads; filled in __post_init__
    _actions: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        acts = {}
        for th in self.threads:
            for x in th.actions:
                acts.setdefault(x.id, x)
        object.__setattr__(self, "_actions", acts)
        object.__setattr__(self, "initial", frozenset(self.initial))

    @property
    def n(self) -> int:
        return len(self.threads)

    @property
    def action_ids(self) -> list[str]:
        return sorted(self._actions)

    def action(self, action_id: str) -> Action:
        return self._actions[action_id]

    def successors(self, s: ProgramState, t: int) -> list[ProgramState]:
        """List form of :func:`thread_successors`, used by the exploration kernels."""
        local = s.locals[t]
        out = []
        seen = set()
        for x in self.threads[t].actions:
            for g2, l2 in x.effect(s.shared, local):
                s2 = s.with_local(t, g2, l2)
                if s2 not in seen:
                    seen.add(s2)
                    out.append(s2)
        if not out:
            out.append(s)
        return out


class ThreadIndexError(ValueError):
    pass


def thread_successors(p: Program, s: ProgramState, t: int) -> frozenset:
    if not 0 <= t < p.n:
        raise ThreadIndexError(f"thread {t} out of range for {p.n} threads")
    return frozenset(p.successors(s, t))


def action_successors(p: Program, s: ProgramState, t: int, action_id: str) -> list[ProgramState]:
    """Successors of ``s`` when thread ``t`` fires ``action_id``; empty if disabled."""
    x = p.action(action_id)
    if all(x is not y for y in p.threads[t].actions):
        return []
    return [s.with_local(t, g2, l2) for g2, l2 in x.effect(s.shared, s.locals[t])]


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    line: int | None = None

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.kind}: {self.message}"


def _symbols(local) -> Sequence:
    if isinstance(local, tuple):
        return local
    return (local,)


def validate_program(p: Program) -> list[Diagnostic]:
    """Report every structural problem with ``p``; an empty list means well-formed."""
    issues: list[Diagnostic] = []
    if not p.initial:
        issues.append(Diagnostic("initial", "program has no initial states"))
    if p.n == 0:
        issues.append(Diagnostic("threads", "program has no threads"))
    k = p.shared_domain
    for s in sorted(p.initial, key=repr):
        if len(s.locals) != p.n:
            issues.append(Diagnostic(
                "arity", f"initial state {s!r} has {len(s.locals)} locals, expected {p.n}"))
            continue
        if k is not None and not (isinstance(s.shared, int) and 0 <= s.shared < k):
            issues.append(Diagnostic("domain", f"initial shared value {s.shared!r} outside [0,{k})"))
        for t, th in enumerate(p.threads):
            m = th.local_domain
            if m is None:
                continue
            for sym in _symbols(s.locals[t]):
                if not 0 <= sym < m:
                    issues.append(Diagnostic(
                        "domain", f"initial local {sym!r} of thread {th.name} outside [0,{m})"))
    seen = set()
    for th in p.threads:
        for x in th.actions:
            if (th.local_domain, x.id) in seen:
                continue
            seen.add((th.local_domain, x.id))
            if k is not None:
                for g in x.shared_refs:
                    if not 0 <= g < k:
                        issues.append(Diagnostic(
                            "domain", f"action {x.id} references shared state {g} outside [0,{k})",
                            x.line))
            if th.local_domain is not None:
                for sym in x.local_refs:
                    if not 0 <= sym < th.local_domain:
                        issues.append(Diagnostic(
                            "domain",
                            f"action {x.id} references local symbol {sym} outside [0,{th.local_domain})",
                            x.line))
    return issues
