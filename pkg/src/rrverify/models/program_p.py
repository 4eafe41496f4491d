"""The counting program where only the first thread may enter the loop.

```
shared int m := 0, s := 0;  local int l := 0
0: m++
1: if m = 1:
2:     s++, l++
3:     assert s = l; goto 2
4: (exit)
```

Shared state is ``(m, s)``; each local state is ``(pc, l)``.  The assertion
is the property: thread 0 sitting at pc 3 with ``s != l``.
"""

from __future__ import annotations

from itertools import product

from ..abstraction import Property, make_predicate_abstraction
from ..model import Action, Program, ProgramState, Thread
from .bundle import ModelBundle

EXIT = 4


def _inc_m(g, loc):
    pc, l = loc
    if pc == 0:
        m, s = g
        yield (m + 1, s), (1, l)


def _branch(g, loc):
    pc, l = loc
    if pc == 1:
        yield g, ((2 if g[0] == 1 else EXIT), l)


def _inc_sl(g, loc):
    pc, l = loc
    if pc == 2:
        m, s = g
        yield (m, s + 1), (3, l + 1)


def _assert_goto(g, loc):
    pc, l = loc
    if pc == 3:
        yield g, (2, l)


ACTIONS = (Action("m++", _inc_m), Action("if", _branch),
           Action("s++,l++", _inc_sl), Action("assert", _assert_goto))


def program_p_model(n: int = 2) -> Program:
    if n < 1:
        raise ValueError("program-p needs at least one thread")
    threads = tuple(Thread(f"T{i}", ACTIONS) for i in range(n))
    init = ProgramState((0, 0), ((0, 0),) * n)
    return Program(threads, frozenset([init]), "program-p")


def _pc0(c):
    return c.locals[0][0]


def _s_eq_l0(c):
    return c.shared[1] == c.locals[0][1]


def _m_is(v):
    return lambda c: c.shared[0] == v


# Abstract successor enumerators: (abstract state, thread, thread count) -> set.
# A thread count of None asks for the union over all thread counts.

def _alpha1_branch(a, t, n):
    pc0, b = a
    if t != 0:
        return {a}
    if pc0 != 1:
        return set()
    return {(2, b), (EXIT, b)}


def _alpha2_inc_m(a, t, n):
    pc0, b, m1 = a
    if t == 0:
        # only thread 0's pc and the two bits are known: m != 1 may become 1 or not
        if pc0 != 0:
            return set()
        return {(1, b, 0), (1, b, 1)} if not m1 else {(1, b, 0)}
    # thread t waits at pc 0; `others` counts threads besides 0 and t.
    # m is the number of threads past pc 0, and s != l0 with thread 0 outside
    # the loop needs some other thread inside it.
    others = float("inf") if n is None else n - 2
    inside0 = pc0 in (2, 3)
    if inside0 and not b:
        return set()
    if pc0 >= 1:
        if m1:
            return {(pc0, 1, 0)} if b else set()
        return {(pc0, b, 0)} if others >= 1 else set()
    if m1:
        return {(0, b, 0)} if others >= 1 else set()
    out = {(0, 1, 1)} if b else set()
    if others >= 2:
        out.add((0, b, 0))
    return out


def program_p_alpha(variant: int):
    """Abstraction ``(pc0, s = l0[, m = 1[, m = 0]])`` for variant 1, 2 or 3."""
    if variant == 1:
        return make_predicate_abstraction(
            "alpha1", _pc0, [_s_eq_l0], disrespects=["if"],
            enumerators={"if": _alpha1_branch}, pc_range=5)
    if variant == 2:
        return make_predicate_abstraction(
            "alpha2", _pc0, [_s_eq_l0, _m_is(1)], disrespects=["m++"],
            enumerators={"m++": _alpha2_inc_m}, pc_range=5)
    if variant == 3:
        return make_predicate_abstraction(
            "alpha3", _pc0, [_s_eq_l0, _m_is(1), _m_is(0)], pc_range=5)
    raise ValueError(f"unknown program-p abstraction variant {variant!r}")


# thread 0 waiting at the assertion with s != l
ASSERTION = Property("assert s=l", lambda a: not (a[0] == 3 and a[1] == 0))


def invariant(c: ProgramState) -> bool:
    """Holds on every reachable state.

    m counts threads past pc 0, at most one thread is inside the loop, threads
    outside it keep l = 0, and s equals the looping thread's l (0 if none),
    which is never negative.
    """
    m, s = c.shared
    pcs = [loc[0] for loc in c.locals]
    if m != sum(pc >= 1 for pc in pcs):
        return False
    inside = [loc for loc in c.locals if loc[0] in (2, 3)]
    if len(inside) > 1:
        return False
    if any(l != 0 for pc, l in c.locals if pc not in (2, 3)):
        return False
    return s >= 0 and s == (inside[0][1] if inside else 0)


def _loop_states(n, bound, m_values):
    for pcs in product(range(5), repeat=n):
        inside = [i for i, pc in enumerate(pcs) if pc in (2, 3)]
        if len(inside) > 1:
            continue
        for m in m_values(pcs):
            for s in (range(bound + 1) if inside else (0,)):
                locs = tuple((pc, s if i in inside else 0) for i, pc in enumerate(pcs))
                yield ProgramState((m, s), locs)


def scope(n: int, bound: int = 5):
    """States satisfying :func:`invariant` with integers in [-bound, bound] (so in [0, bound])."""
    def count(pcs):
        m = sum(pc >= 1 for pc in pcs)
        return (m,) if m <= bound else ()
    return _loop_states(n, bound, count)


def audit_scope(n: int, bound: int = 5):
    """Like :func:`scope` but with m anywhere in [0, bound].

    Still contains every reachable state.  Leaving m free is what makes the
    branch undecidable from pc and s = l alone, and ``m++`` undecidable from
    the single bit m = 1.
    """
    return _loop_states(n, bound, lambda pcs: range(bound + 1))


def program_p(n: int = 2, abstraction: str = "alpha2", error=None) -> ModelBundle:
    variants = {"alpha1": 1, "alpha2": 2, "alpha3": 3}
    if abstraction not in variants:
        raise KeyError(abstraction)
    return ModelBundle(program_p_model(n), program_p_alpha(variants[abstraction]), ASSERTION,
                       scope=lambda: scope(n), invariant=invariant,
                       audit_scope=lambda: audit_scope(n))
