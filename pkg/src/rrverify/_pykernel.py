"""Pure-Python exploration kernel: the reach table and the round-finishing worklist.

``_ckernel.pyx`` is a line-for-line typed copy of this module; keep them in step.
"""

from __future__ import annotations

import time
from collections import deque

from .errors import ResourceLimit

IMPLEMENTATION = "python"


class Node:
    """A program state with scheduling metadata, plus the edge that produced it."""

    __slots__ = ("prog", "finder", "rt", "dt", "parent", "via", "absval",
                 "expanded", "delayed", "live")

    def __init__(self, prog, finder, rt, dt, parent, via, absval):
        self.prog = prog
        self.finder = finder
        self.rt = rt
        self.dt = dt
        self.parent = parent
        self.via = via  # thread that stepped, or -1 for a delay
        self.absval = absval
        self.expanded = False
        self.delayed = False
        self.live = True

    def key(self):
        return (self.prog, self.finder)

    def __repr__(self):
        return f"Node({self.prog!r}, finder={self.finder}, rt={self.rt}, dt={self.dt})"


class ReachCore:
    """Reached states keyed on (program state, finder).

    Each key keeps its Pareto-minimal (rounds, delays) versions, so a state
    first met late in a round is still expanded when a cheaper route to it
    shows up.
    """

    def __init__(self, n, succ, alpha, bad, state_limit=0, deadline=0.0):
        self.n = n
        self.succ = succ
        self.alpha = alpha
        self.bad = bad
        self.state_limit = state_limit
        self.deadline = deadline
        self.table = {}
        self.abs_states = set()
        self.alpha_cache = {}
        self.bad_cache = {}
        self.by_round = {}
        self.by_delay = {}
        self.size = 0
        self.image_calls = 0
        self.new_abs = 0

    def _abs(self, prog):
        a = self.alpha_cache.get(prog)
        if a is None:
            a = self.alpha(prog)
            self.alpha_cache[prog] = a
        return a

    def is_bad(self, absval):
        b = self.bad_cache.get(absval)
        if b is None:
            b = bool(self.bad(absval))
            self.bad_cache[absval] = b
        return b

    def insert(self, prog, finder, rt, dt, parent, via):
        """Add a version unless an existing one is no more expensive; return it or None."""
        key = (prog, finder)
        versions = self.table.get(key)
        if versions is None:
            versions = []
            self.table[key] = versions
        else:
            for v in versions:
                if v.rt <= rt and v.dt <= dt:
                    return None
            kept = []
            for v in versions:
                if rt <= v.rt and dt <= v.dt:
                    v.live = False
                else:
                    kept.append(v)
            versions[:] = kept
        absval = self._abs(prog)
        node = Node(prog, finder, rt, dt, parent, via, absval)
        versions.append(node)
        self.size += 1
        if self.state_limit and self.size > self.state_limit:
            raise ResourceLimit("max-states")
        self.by_round.setdefault(rt, []).append(node)
        self.by_delay.setdefault(dt, []).append(node)
        if absval not in self.abs_states:
            self.abs_states.add(absval)
            self.new_abs += 1
        return node

    def finish_rounds(self, starts, bound):
        """Step without delays from ``starts`` up to ``bound`` rounds; return a violating node or None."""
        n = self.n
        last = n - 1
        work = deque(starts)
        pops = 0
        while work:
            u = work.popleft()
            if not u.live:
                continue
            if self.is_bad(u.absval):
                return u
            pops += 1
            if self.deadline and pops & 255 == 0 and time.monotonic() > self.deadline:
                raise ResourceLimit("timeout")
            if u.expanded or not (u.finder < last or u.rt < bound):
                continue
            u.expanded = True
            t = u.finder + 1
            rt = u.rt
            if t == n:
                t = 0
                rt += 1
            self.image_calls += 1
            for s2 in self.succ(u.prog, t):
                v = self.insert(s2, t, rt, u.dt, u, t)
                if v is not None:
                    work.append(v)
        return None

    def delay(self, node, bound):
        """Skip the next thread's turn from ``node``.

        Returns the new node, or None when it is dominated, was done before, or
        would need more than ``bound`` rounds (then it stays pending).
        """
        if node.delayed or not node.live:
            return None
        t = node.finder + 1
        rt = node.rt
        if t == self.n:
            t = 0
            rt += 1
        if rt > bound:
            return None
        node.delayed = True
        return self.insert(node.prog, t, rt, node.dt + 1, node, -1)
