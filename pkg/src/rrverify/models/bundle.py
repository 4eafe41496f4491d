from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from ..abstraction import Abstraction, Property
from ..model import Program, ProgramState


@dataclass(frozen=True)
class ModelBundle:
    """A program with the abstraction and property to check it against.

    ``scope`` enumerates a bounded set of states for respect audits and
    ``invariant`` is the condition those states were filtered by; both are
    None for models whose state space is enumerated in full.  ``audit_scope``,
    when given, is a looser superset of the reachable states against which
    the declared respect classes are checked.
    """

    program: Program
    abstraction: Abstraction
    prop: Property
    scope: Callable[[], Iterable[ProgramState]] | None = None
    invariant: Callable[[ProgramState], bool] | None = None
    audit_scope: Callable[[], Iterable[ProgramState]] | None = None

    def respect_scope(self) -> Iterable[ProgramState]:
        return (self.audit_scope or self.scope)()


def shared_abstraction(k: int | None = None) -> Abstraction:
    """Keep only the shared value.  Every action is assumed to respect it."""
    return Abstraction("shared", lambda s: s.shared, codomain_size=k, codomain_tag="shared")
