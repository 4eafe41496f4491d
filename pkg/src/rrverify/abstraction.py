"""Abstractions of program states, respect checking and the closure test.

An action respects an abstraction when the abstract value after the action
is a function of the abstract value before it.  Actions that do not respect
it carry an enumerator of abstract successors, and a set of abstract states
is closed when those enumerators never leave the set.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .errors import ConfigError
from .model import Program, ProgramState, action_successors

# (abstract state, thread index, thread count or None for any) -> abstract successors
Enumerator = Callable[[Hashable, int, int], Iterable[Hashable]]


@dataclass(frozen=True)
class Abstraction:
    name: str
    alpha: Callable[[ProgramState], Hashable]
    disrespects: frozenset = frozenset()
    enumerators: Mapping[str, Enumerator] = field(default_factory=dict)
    # None when the codomain is not known to be finite
    codomain_size: int | None = None
    # equal tags across thread counts mean the codomain does not depend on n
    codomain_tag: str | None = None
    # "enabled": a disabled action contributes no step; "stutter": it maps s to s
    respect_semantics: str = "enabled"

    def classify(self, action_id: str) -> str:
        return "disrespects" if action_id in self.disrespects else "respects"

    def __call__(self, s: ProgramState) -> Hashable:
        return self.alpha(s)


@dataclass(frozen=True)
class Property:
    """A safety property over abstract states; ``holds(a)`` is True when ``a`` is safe."""

    name: str
    holds: Callable[[Hashable], bool]

    def violated_by(self, a: Hashable) -> bool:
        return not self.holds(a)


TRUE = Property("true", lambda a: True)


def alpha_image(abs_: Abstraction, states: Iterable[ProgramState]) -> set:
    return {abs_.alpha(s) for s in states}


def identity_abstraction(p: Program) -> Abstraction:
    return Abstraction("identity", lambda s: s, codomain_tag="identity")


@dataclass(frozen=True)
class ClosureResult:
    closed: bool
    counterexample: tuple | None = None  # (a, action id, thread, a')
    checks: int = 0

    def __bool__(self):
        return self.closed


def _ordered(states):
    try:
        return sorted(states)
    except TypeError:
        return sorted(states, key=repr)


def closure_test(A: Iterable[Hashable], abs_: Abstraction, p: Program,
                 parametric: bool = False) -> ClosureResult:
    """Check that no disrespectful action leads from ``A`` to an abstract state outside it.

    With ``parametric`` the enumerators are asked for successors valid for
    every thread count, and threads 0 and 1 stand for all threads (the
    abstraction only singles out thread 0).
    """
    A = set(A)
    missing = [x for x in abs_.disrespects if x not in abs_.enumerators]
    if missing:
        raise ConfigError(f"no abstract successor enumerator for {sorted(missing)}")
    n = None if parametric else p.n
    ts = [0, 1] if parametric else list(range(p.n))
    checks = 0
    for a in _ordered(A):
        for x in sorted(abs_.disrespects):
            enum = abs_.enumerators[x]
            for t in ts:
                checks += 1
                for a2 in _ordered(set(enum(a, t, n))):
                    if a2 not in A:
                        return ClosureResult(False, (a, x, t, a2), checks)
    return ClosureResult(True, None, checks)


@dataclass(frozen=True)
class RespectResult:
    action: str
    respects: bool
    witness: tuple | None = None  # (s1, s2, thread, s1', s2')
    # True only when the scope covered the whole state space
    conclusive: bool = False

    @property
    def label(self) -> str:
        if not self.respects:
            return "refuted"
        return "confirmed" if self.conclusive else "bounded-confirmed"


def _steps(p: Program, s: ProgramState, t: int, x: str, semantics: str) -> list:
    out = action_successors(p, s, t, x)
    if not out and semantics == "stutter":
        return [s]
    return out


def verify_respect(p: Program, abs_: Abstraction, x: str, scope: Iterable[ProgramState],
                   conclusive: bool = False, semantics: str | None = None) -> RespectResult:
    """Search ``scope`` for two equally abstracted states whose ``x`` moves abstract differently.

    ``conclusive`` should be set by callers whose scope is the full state space.
    """
    semantics = semantics or abs_.respect_semantics
    alpha = abs_.alpha
    # (abstract source, thread) -> (abstract target, source, target) of the first witness
    first: dict = {}
    for s in scope:
        a = alpha(s)
        for t in range(p.n):
            for s2 in _steps(p, s, t, x, semantics):
                a2 = alpha(s2)
                key = (a, t)
                seen = first.get(key)
                if seen is None:
                    first[key] = (a2, s, s2)
                elif seen[0] != a2:
                    return RespectResult(x, False, (seen[1], s, t, seen[2], s2))
    return RespectResult(x, True, None, conclusive)


def brute_force_successors(p: Program, abs_: Abstraction, x: str, scope: Iterable[ProgramState],
                           semantics: str | None = None) -> dict:
    """Map (abstract state, thread) to the abstract successors of ``x`` over all states in ``scope``."""
    semantics = semantics or abs_.respect_semantics
    out: dict = defaultdict(set)
    for s in scope:
        a = abs_.alpha(s)
        for t in range(p.n):
            for s2 in _steps(p, s, t, x, semantics):
                out[(a, t)].add(abs_.alpha(s2))
    return out


def table_enumerator(table: Mapping) -> Enumerator:
    """Enumerator backed by a precomputed (abstract state, thread) table."""
    def enum(a, t, n):
        return table.get((a, t), ())
    return enum


def make_predicate_abstraction(name: str, pc_of: Callable[[ProgramState], int],
                               predicates: Iterable[Callable[[ProgramState], bool]],
                               disrespects: Iterable[str] = (),
                               enumerators: Mapping[str, Enumerator] | None = None,
                               pc_range: int | None = None,
                               codomain_tag: str | None = None) -> Abstraction:
    """Abstraction to ``(pc of thread 0, bit of each predicate)``; bits are 0 or 1."""
    preds = tuple(predicates)

    def alpha(s):
        return (pc_of(s),) + tuple(int(bool(q(s))) for q in preds)

    size = pc_range * 2 ** len(preds) if pc_range is not None else None
    return Abstraction(name, alpha, frozenset(disrespects), dict(enumerators or {}),
                       codomain_size=size, codomain_tag=codomain_tag or name)
