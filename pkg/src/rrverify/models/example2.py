"""Three threads over a shared value in {0, 1, 2}: T0 and T1 move 0 to 1, T2 moves 0 to 2."""

from __future__ import annotations

from ..abstraction import Abstraction, Property
from ..model import Action, Program, ProgramState, Thread
from .bundle import ModelBundle, shared_abstraction


def _move(src, dst):
    def effect(g, l):
        if g == src:
            yield dst, l
    return effect


def example2_model(n: int = 3) -> Program:
    """Threads past index 2 are further copies of T2."""
    if n < 3:
        raise ValueError("example2 needs at least 3 threads")
    moves = [Action("T0:0->1", _move(0, 1), (0, 1)),
             Action("T1:0->1", _move(0, 1), (0, 1)),
             Action("T2:0->2", _move(0, 2), (0, 2))]
    threads = [Thread(f"T{i}", (moves[min(i, 2)],), 1) for i in range(n)]
    init = ProgramState(0, (0,) * n)
    return Program(tuple(threads), frozenset([init]), "example2", 3)


def shared_not(g) -> Property:
    return Property(f"shared!={g}", lambda a: a != g)


def example2(n: int = 3, abstraction: str = "shared", error: int | None = None) -> ModelBundle:
    p = example2_model(n)
    if abstraction == "identity":
        abs_ = Abstraction("identity", lambda s: s, codomain_tag="identity")
        prop = Property("true", lambda a: True) if error is None else \
            Property(f"shared!={error}", lambda a: a.shared != error)
    elif abstraction == "shared":
        abs_ = shared_abstraction(3)
        prop = Property("true", lambda a: True) if error is None else shared_not(error)
    else:
        raise KeyError(abstraction)
    return ModelBundle(p, abs_, prop)
