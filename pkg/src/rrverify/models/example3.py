"""Symmetric threads running ``t := !t; if t then s := 1`` over shared booleans (s, t).

The shared state is the pair (s, t); each thread's local state is its pc:
0 flip, 1 test, 2 assign, 3 done.
"""

from __future__ import annotations

from ..abstraction import Property, identity_abstraction
from ..model import Action, Program, ProgramState, Thread
from .bundle import ModelBundle


def _flip(g, pc):
    if pc == 0:
        s, t = g
        yield (s, 1 - t), 1


def _test(g, pc):
    if pc == 1:
        yield g, (2 if g[1] else 3)


def _assign(g, pc):
    if pc == 2:
        yield (1, g[1]), 3


ACTIONS = (Action("flip", _flip), Action("test", _test), Action("assign", _assign))


def example3_model(n: int = 1) -> Program:
    if n < 1:
        raise ValueError("example3 needs at least one thread")
    threads = tuple(Thread(f"T{i}", ACTIONS, 4) for i in range(n))
    init = ProgramState((0, 0), (0,) * n)
    return Program(threads, frozenset([init]), "example3")


def example3(n: int = 1, abstraction: str = "identity", error=None) -> ModelBundle:
    p = example3_model(n)
    if abstraction != "identity":
        raise KeyError(abstraction)
    prop = Property("true", lambda a: True)
    if error is not None:
        prop = Property(f"s!={error}", lambda a: a.shared[0] != error)
    return ModelBundle(p, identity_abstraction(p), prop)
