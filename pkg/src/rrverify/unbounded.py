"""Verification for every thread count: grow n until the abstract reach set repeats.

For each n the fixed-thread explorer runs to completion.  When two
consecutive thread counts give the same abstract reach set, that set is
checked for closure using enumerators that hold for any number of threads.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .abstraction import closure_test
from .errors import ConfigError
from .explore import SAFE, UNKNOWN, VIOLATION, Limits, VerdictReport, druba
from .models.bundle import ModelBundle


@dataclass
class UnboundedVerdict:
    verdict: str
    n_plateau_at: int | None
    abs_states: frozenset
    per_n: dict[int, VerdictReport] = field(default_factory=dict)
    reason: str | None = None
    counterexample: tuple | None = None
    closure_checks: int = 0
    elapsed: float = 0.0

    @property
    def violating_n(self) -> int | None:
        for n, rep in self.per_n.items():
            if rep.verdict == VIOLATION:
                return n
        return None


def verify_unbounded(family: Callable[[int], ModelBundle], n_min: int = 2, n_max: int = 6,
                     limits: Limits = Limits(), kernel=None) -> UnboundedVerdict:
    started = time.monotonic()
    per_n: dict[int, VerdictReport] = {}
    prev = None
    tag = None

    def done(verdict, at, abs_states, reason=None, cex=None, checks=0):
        return UnboundedVerdict(verdict, at, frozenset(abs_states), per_n, reason, cex, checks,
                                time.monotonic() - started)

    for n in range(n_min, n_max + 1):
        b = family(n)
        if tag is None:
            tag = b.abstraction.codomain_tag
        elif b.abstraction.codomain_tag != tag or tag is None:
            raise ConfigError(f"abstraction codomain changes with the thread count (n={n})")
        rep = druba(b.program, b.abstraction, b.prop, limits, kernel=kernel)
        per_n[n] = rep
        if rep.verdict == VIOLATION:
            return done(VIOLATION, None, rep.abs_states)
        if rep.verdict == UNKNOWN:
            return done(UNKNOWN, None, rep.abs_states, f"n={n}: {rep.reason}", rep.counterexample)
        if prev is not None and rep.abs_states == prev:
            res = closure_test(rep.abs_states, b.abstraction, b.program, parametric=True)
            if res.closed:
                return done(SAFE, n, rep.abs_states, checks=res.checks)
            return done(UNKNOWN, n, rep.abs_states, "not-closed", res.counterexample, res.checks)
        prev = rep.abs_states
    return done(UNKNOWN, None, prev or frozenset(), "max-n")
