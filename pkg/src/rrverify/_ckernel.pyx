# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exploration kernel; a typed copy of ``_pykernel``."""

import time
from collections import deque

from .errors import ResourceLimit

IMPLEMENTATION = "cython"


cdef class Node:
    cdef public object prog
    cdef public int finder
    cdef public int rt
    cdef public int dt
    cdef public object parent
    cdef public int via
    cdef public object absval
    cdef public bint expanded
    cdef public bint delayed
    cdef public bint live

    def __init__(self, prog, int finder, int rt, int dt, parent, int via, absval):
        self.prog = prog
        self.finder = finder
        self.rt = rt
        self.dt = dt
        self.parent = parent
        self.via = via
        self.absval = absval
        self.expanded = False
        self.delayed = False
        self.live = True

    def key(self):
        return (self.prog, self.finder)

    def __repr__(self):
        return f"Node({self.prog!r}, finder={self.finder}, rt={self.rt}, dt={self.dt})"


cdef class ReachCore:
    cdef public int n
    cdef public object succ
    cdef public object alpha
    cdef public object bad
    cdef public long state_limit
    cdef public double deadline
    cdef public dict table
    cdef public set abs_states
    cdef public dict alpha_cache
    cdef public dict bad_cache
    cdef public dict by_round
    cdef public dict by_delay
    cdef public long size
    cdef public long image_calls
    cdef public long new_abs

    def __init__(self, int n, succ, alpha, bad, long state_limit=0, double deadline=0.0):
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

    cdef object _abs(self, prog):
        a = self.alpha_cache.get(prog)
        if a is None:
            a = self.alpha(prog)
            self.alpha_cache[prog] = a
        return a

    cpdef bint is_bad(self, absval):
        b = self.bad_cache.get(absval)
        if b is None:
            b = bool(self.bad(absval))
            self.bad_cache[absval] = b
        return b

    cpdef Node insert(self, prog, int finder, int rt, int dt, parent, int via):
        cdef Node v
        cdef list versions, kept
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
        lst = self.by_round.get(rt)
        if lst is None:
            self.by_round[rt] = [node]
        else:
            lst.append(node)
        lst = self.by_delay.get(dt)
        if lst is None:
            self.by_delay[dt] = [node]
        else:
            lst.append(node)
        if absval not in self.abs_states:
            self.abs_states.add(absval)
            self.new_abs += 1
        return node

    cpdef object finish_rounds(self, starts, int bound):
        cdef int n = self.n
        cdef int last = n - 1
        cdef int t, rt
        cdef long pops = 0
        cdef Node u, v
        work = deque(starts)
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

    cpdef Node delay(self, Node node, int bound):
        cdef int t, rt
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
