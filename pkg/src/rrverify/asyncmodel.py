"""Finite asynchronous programs in the ``async`` text format.

Each rule ``rule g l -> g' l'`` is one action of its thread template.  Two
abstractions are offered: ``identity`` and ``shared-only``.  For the latter
the respect classification and the abstract successors of disrespectful
rules are computed by enumerating the whole (finite) state space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from .abstraction import (Abstraction, Property, brute_force_successors, identity_abstraction,
                          table_enumerator, verify_respect)
from .errors import ConfigError, ParseError
from .model import Action, Program, ProgramState, Thread, validate_program
from .models.bundle import ModelBundle
from .textformat import expect, ints, token_lines

ABSTRACTIONS = ("identity", "shared-only")


@dataclass
class AsyncTemplate:
    name: str
    copies: int
    locals: int | None = None
    linit: int | None = None
    rules: list[tuple] = field(default_factory=list)  # (g, l, g2, l2, line)
    line: int | None = None


@dataclass
class AsyncModel:
    program: Program
    error: int | None
    templates: list[AsyncTemplate]


def _rule_effect(g0, l0, g1, l1):
    def effect(g, l):
        if g == g0 and l == l0:
            yield g1, l1
    return effect


def parse_async(text: str) -> AsyncModel:
    lines = list(token_lines(text))
    if not lines or lines[0][1] != ["async"]:
        raise ParseError("file must start with `async`", lines[0][0] if lines else 1)
    k = g0 = error = None
    templates: list[AsyncTemplate] = []
    cur: AsyncTemplate | None = None
    for no, toks in lines[1:]:
        head = toks[0]
        if cur is not None:
            if head == "locals":
                expect(toks, 2, no, "locals <m>")
                cur.locals = ints(toks[1:], no)[0]
            elif head == "linit":
                expect(toks, 2, no, "linit <l0>")
                cur.linit = ints(toks[1:], no)[0]
            elif head == "rule":
                if len(toks) != 6 or toks[3] != "->":
                    raise ParseError("expected `rule <g> <l> -> <g'> <l'>`", no)
                cur.rules.append(tuple(ints(toks[1:3] + toks[4:6], no)) + (no,))
            elif head == "end":
                expect(toks, 1, no, "end")
                for what in ("locals", "linit"):
                    if getattr(cur, what) is None:
                        raise ParseError(f"thread {cur.name} is missing `{what}`", cur.line)
                templates.append(cur)
                cur = None
            else:
                raise ParseError(f"unexpected {head!r} inside thread block", no)
        elif head == "shared":
            expect(toks, 2, no, "shared <k>")
            k = ints(toks[1:], no)[0]
        elif head == "init":
            expect(toks, 2, no, "init <g0>")
            g0 = ints(toks[1:], no)[0]
        elif head == "thread":
            if len(toks) != 4 or toks[2] != "copies":
                raise ParseError("expected `thread <name> copies <c>`", no)
            c = ints(toks[3:], no)[0]
            if c < 1:
                raise ParseError("copies must be at least 1", no)
            if any(t.name == toks[1] for t in templates):
                raise ParseError(f"duplicate thread name {toks[1]!r}", no)
            cur = AsyncTemplate(toks[1], c, line=no)
        elif head == "error":
            if len(toks) != 3 or toks[1] != "shared":
                raise ParseError("expected `error shared <g>`", no)
            error = ints(toks[2:], no)[0]
        else:
            raise ParseError(f"unexpected {head!r}", no)
    if cur is not None:
        raise ParseError(f"thread {cur.name} is missing `end`", cur.line)
    if k is None:
        raise ParseError("missing `shared`")
    if g0 is None:
        raise ParseError("missing `init`")
    if not templates:
        raise ParseError("no threads declared")
    threads = []
    locs = []
    for tmpl in templates:
        actions = tuple(
            Action(f"{tmpl.name}:{i}", _rule_effect(g, l, g2, l2), (g, g2), (l, l2), line)
            for i, (g, l, g2, l2, line) in enumerate(tmpl.rules))
        for c in range(tmpl.copies):
            name = tmpl.name if tmpl.copies == 1 else f"{tmpl.name}#{c}"
            threads.append(Thread(name, actions, tmpl.locals))
            locs.append(tmpl.linit)
    p = Program(tuple(threads), frozenset([ProgramState(g0, tuple(locs))]), "async", k)
    issues = validate_program(p)
    if error is not None and not 0 <= error < k:
        raise ParseError(f"error state {error} outside [0,{k})")
    if issues:
        raise ConfigError("; ".join(str(d) for d in issues))
    return AsyncModel(p, error, templates)


def full_domain(p: Program):
    """Every program state of a finite model."""
    for g in range(p.shared_domain):
        for locs in product(*[range(th.local_domain) for th in p.threads]):
            yield ProgramState(g, locs)


def shared_only_abstraction(p: Program) -> Abstraction:
    """Shared-value abstraction with classification and enumerators computed over the full domain."""
    alpha = _shared_of
    probe = Abstraction("shared-only", alpha, respect_semantics="stutter")
    states = list(full_domain(p))
    disrespects = set()
    enums = {}
    for x in p.action_ids:
        if not verify_respect(p, probe, x, states, conclusive=True).respects:
            disrespects.add(x)
            enums[x] = table_enumerator(dict(brute_force_successors(p, probe, x, states)))
    return Abstraction("shared-only", alpha, frozenset(disrespects), enums,
                       codomain_size=p.shared_domain, codomain_tag="shared-only",
                       respect_semantics="stutter")


def _shared_of(s):
    return s.shared


def async_abstraction(p: Program, kind: str = "identity") -> Abstraction:
    if kind == "identity":
        return identity_abstraction(p)
    if kind == "shared-only":
        return shared_only_abstraction(p)
    raise ConfigError(f"unknown abstraction {kind!r} (choose from {', '.join(ABSTRACTIONS)})")


def error_property(error: int | None, kind: str = "identity") -> Property:
    """``shared != error`` over the chosen abstraction; always true without an error clause."""
    if error is None:
        return Property("true", lambda a: True)
    if kind == "identity":
        return Property(f"shared!={error}", lambda a: a.shared != error)
    return Property(f"shared!={error}", lambda a: a != error)


def parse_async_model(text: str, abstraction: str = "identity") -> ModelBundle:
    m = parse_async(text)
    abs_ = async_abstraction(m.program, abstraction)
    return ModelBundle(m.program, abs_, error_property(m.error, abstraction),
                       scope=lambda: full_domain(m.program))


def random_async_text(seed: int, max_threads: int = 3, max_shared: int = 4,
                      max_locals: int = 3, max_rules: int = 8) -> str:
    """A random well-formed model; every other seed adds an error clause."""
    rng = random.Random(seed)
    k = rng.randint(2, max_shared)
    n = rng.randint(1, max_threads)
    out = ["async", f"shared {k}", "init 0"]
    left = n
    idx = 0
    while left:
        c = rng.randint(1, left)
        left -= c
        m = rng.randint(1, max_locals)
        out.append(f"thread T{idx} copies {c}")
        out.append(f"  locals {m}")
        out.append("  linit 0")
        for _ in range(rng.randint(1, max_rules)):
            out.append(f"  rule {rng.randrange(k)} {rng.randrange(m)} -> "
                       f"{rng.randrange(k)} {rng.randrange(m)}")
        out.append("end")
        idx += 1
    if seed % 2:
        out.append(f"error shared {rng.randrange(1, k)}")
    return "\n".join(out) + "\n"
