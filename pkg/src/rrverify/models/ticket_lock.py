"""Ticket lock over shared ``(s, t)`` with per-thread ``(pc, l)``.

Tickets are handed out when threads are created, so the initial state has
``t = n`` and ``l_i = i``.  Program points: 0 waits for ``s = l``, 1 is the
critical section body, 2 is the exit block ``inc(s); l := fetch_and_add(t)``
executed atomically.

The abstraction is ``(pc0, P1, P2, P3, P4)`` with
P1: every ticket is below t; P2: at least two threads are past the wait;
P3: s equals thread 0's ticket; P4: thread 0's ticket is unique.
"""

from __future__ import annotations

from itertools import permutations, product

from ..abstraction import Abstraction, Property
from ..model import Action, Program, ProgramState, Thread
from .bundle import ModelBundle


def _wait(g, loc):
    pc, l = loc
    if pc == 0:
        yield g, ((1 if g[0] == l else 0), l)


def _critical(g, loc):
    pc, l = loc
    if pc == 1:
        yield g, (2, l)


def _exit(g, loc):
    pc, l = loc
    if pc == 2:
        s, t = g
        yield (s + 1, t + 1), (0, t)


def _exit_no_ticket_increment(g, loc):
    # seeded bug: the new ticket is read but t is not advanced
    pc, l = loc
    if pc == 2:
        s, t = g
        yield (s + 1, t), (0, t)


MUTANTS = {"no-ticket-increment": _exit_no_ticket_increment}


def ticket_lock_model(n: int = 2, mutant: str | None = None) -> Program:
    if n < 2:
        raise ValueError("ticket-lock needs at least 2 threads")
    exit_effect = _exit if mutant is None else MUTANTS[mutant]
    actions = (Action("wait", _wait), Action("critical", _critical), Action("exit", exit_effect))
    threads = tuple(Thread(f"T{i}", actions) for i in range(n))
    init = ProgramState((0, n), tuple((0, i) for i in range(n)))
    return Program(threads, frozenset([init]), "ticket-lock")


def p1(c):
    t = c.shared[1]
    return all(t > l for _, l in c.locals)


def p2(c):
    return sum(pc >= 1 for pc, _ in c.locals) >= 2


def p3(c):
    return c.shared[0] == c.locals[0][1]


def p4(c):
    l0 = c.locals[0][1]
    return all(l0 != l for _, l in c.locals[1:])


def alpha(c):
    return (c.locals[0][0], int(p1(c)), int(p2(c)), int(p3(c)), int(p4(c)))


# The only states satisfying ``invariant`` in which an exit can fire:
# thread 0 leaving, or another thread leaving while thread 0 waits on a
# different ticket.  Afterwards thread 0 may or may not be next in line.
_AFTER_EXIT = frozenset({(0, 1, 0, 0, 1), (0, 1, 0, 1, 1)})


def exit_successors(a, t, n):
    """Abstract successors of the exit block, valid for every thread count."""
    if t == 0:
        return set(_AFTER_EXIT) if a == (2, 1, 0, 1, 1) else set()
    return set(_AFTER_EXIT) if a == (0, 1, 0, 0, 1) else set()


def ticket_lock_abstraction() -> Abstraction:
    return Abstraction("predicates", alpha, frozenset({"exit"}), {"exit": exit_successors},
                       codomain_size=3 * 2 ** 4, codomain_tag="ticket-lock")


MUTEX = Property("not P2", lambda a: a[2] == 0)


def invariant(c: ProgramState) -> bool:
    """Tickets are distinct and below t, and threads past the wait hold ticket s."""
    s, t = c.shared
    tickets = [l for _, l in c.locals]
    if len(set(tickets)) != len(tickets) or any(l >= t for l in tickets):
        return False
    return all(l == s for pc, l in c.locals if pc >= 1)


def scope(n: int, bound: int = 5):
    """States satisfying :func:`invariant` with integers in [-bound, bound]."""
    vals = range(-bound, bound + 1)
    for s, t in product(vals, vals):
        below = [v for v in vals if v < t]
        for tickets in permutations(below, n):
            holders = [i for i, l in enumerate(tickets) if l == s]
            # only the holder of ticket s may be past the wait
            for pcs in product(*[(0, 1, 2) if i in holders else (0,) for i in range(n)]):
                yield ProgramState((s, t), tuple(zip(pcs, tickets)))


def ticket_lock(n: int = 2, abstraction: str = "predicates", error=None,
                mutant: str | None = None) -> ModelBundle:
    if abstraction != "predicates":
        raise KeyError(abstraction)
    return ModelBundle(ticket_lock_model(n, mutant), ticket_lock_abstraction(), MUTEX,
                       scope=lambda: scope(n), invariant=invariant)
