"""Concurrent pushdown systems: a finite shared state plus one stack per thread.

Stacks are tuples with the top first.  A rule fires on (shared state, top
symbol) and overwrites the top, replaces it by two symbols, or pops it.  No
rule fires on an empty stack.  The abstraction keeps the shared state and
each thread's top symbol (None for an empty stack); pops are the only
actions that do not respect it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .abstraction import Abstraction
from .errors import ConfigError, ParseError
from .model import Action, Diagnostic, Program, ProgramState, Thread, validate_program
from .textformat import expect, ints, token_lines

OVER, PUSH, POP = "over", "push", "pop"


@dataclass(frozen=True)
class CpdsRule:
    kind: str
    g: int
    top: int
    g2: int
    word: tuple = ()  # new top symbols: one for over, two for push, none for pop
    line: int | None = None

    def apply(self, g, stack):
        if g == self.g and stack and stack[0] == self.top:
            yield self.g2, self.word + stack[1:]


@dataclass
class ThreadTemplate:
    name: str
    copies: int
    alphabet: int | None = None
    stack: tuple = ()
    rules: list[CpdsRule] = field(default_factory=list)
    line: int | None = None


@dataclass
class CpdsModel:
    program: Program
    abstraction: Abstraction
    templates: list[ThreadTemplate]
    # action id -> (rule, thread indices running it)
    rules: dict
    diagnostics: list[Diagnostic]


def top_of_stack(s: ProgramState) -> tuple:
    return (s.shared,) + tuple(w[0] if w else None for w in s.locals)


def pop_abs_successors(a: tuple, rule: CpdsRule, t: int, alphabet: int) -> set:
    """Abstract states a pop by thread ``t`` can reach from some concrete state abstracted to ``a``.

    The symbol under the popped one is unconstrained by ``a``, so every
    symbol and the empty stack can surface.
    """
    if rule.kind != POP:
        raise ValueError("not a pop rule")
    if a[0] != rule.g or a[t + 1] != rule.top:
        return set()
    out = set()
    for new_top in list(range(alphabet)) + [None]:
        b = list(a)
        b[0] = rule.g2
        b[t + 1] = new_top
        out.add(tuple(b))
    return out


def _pop_enumerator(rule, owners, alphabet):
    def enum(a, t, n):
        if t not in owners:
            return set()
        return pop_abs_successors(a, rule, t, alphabet)
    return enum


def _parse_rule(toks, line):
    # rule <g> <γ> -> <g'> over <γ'> | push <γ1> <γ2> | pop
    if len(toks) < 6 or toks[3] != "->":
        raise ParseError("expected `rule <g> <sym> -> <g'> over|push|pop ...`", line)
    g, top, g2 = ints([toks[1], toks[2], toks[4]], line)
    kind = toks[5]
    rest = toks[6:]
    if kind == OVER:
        expect(rest, 1, line, "over <sym>")
    elif kind == PUSH:
        expect(rest, 2, line, "push <top> <second>")
    elif kind == POP:
        expect(rest, 0, line, "pop")
    else:
        raise ParseError(f"unknown rule kind {kind!r}", line)
    return CpdsRule(kind, g, top, g2, tuple(ints(rest, line)), line)


def parse_cpds(text: str) -> CpdsModel:
    """Parse the ``cpds`` text format; domain problems are returned as diagnostics."""
    lines = list(token_lines(text))
    if not lines or lines[0][1] != ["cpds"]:
        raise ParseError("file must start with `cpds`", lines[0][0] if lines else 1)
    k = g0 = None
    templates: list[ThreadTemplate] = []
    cur: ThreadTemplate | None = None
    for no, toks in lines[1:]:
        head = toks[0]
        if cur is not None:
            if head == "alphabet":
                expect(toks, 2, no, "alphabet <m>")
                cur.alphabet = ints(toks[1:], no)[0]
            elif head == "stack":
                cur.stack = tuple(ints(toks[1:], no))
            elif head == "rule":
                cur.rules.append(_parse_rule(toks, no))
            elif head == "end":
                expect(toks, 1, no, "end")
                if cur.alphabet is None:
                    raise ParseError(f"thread {cur.name} has no alphabet", cur.line)
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
            cur = ThreadTemplate(toks[1], c, line=no)
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
    return build_cpds(k, g0, templates)


def build_cpds(k: int, g0: int, templates: list[ThreadTemplate]) -> CpdsModel:
    threads = []
    owners: dict[str, list[int]] = {}
    rule_of: dict[str, CpdsRule] = {}
    alphabet_of: dict[str, int] = {}
    init_stacks = []
    for tmpl in templates:
        actions = []
        for i, rule in enumerate(tmpl.rules):
            aid = f"{tmpl.name}:{i}:{rule.kind}"
            actions.append(Action(aid, rule.apply, (rule.g, rule.g2),
                                  (rule.top,) + rule.word, rule.line))
            rule_of[aid] = rule
            alphabet_of[aid] = tmpl.alphabet
            owners[aid] = []
        for c in range(tmpl.copies):
            idx = len(threads)
            name = tmpl.name if tmpl.copies == 1 else f"{tmpl.name}#{c}"
            threads.append(Thread(name, tuple(actions), tmpl.alphabet))
            init_stacks.append(tmpl.stack)
            for x in actions:
                owners[x.id].append(idx)
    init = ProgramState(g0, tuple(init_stacks))
    p = Program(tuple(threads), frozenset([init]), "cpds", k)
    pops = {aid for aid, r in rule_of.items() if r.kind == POP}
    enums = {aid: _pop_enumerator(rule_of[aid], frozenset(owners[aid]), alphabet_of[aid])
             for aid in pops}
    size = k
    for tmpl in templates:
        size *= (tmpl.alphabet + 1) ** tmpl.copies
    abs_ = Abstraction("top-of-stack", top_of_stack, frozenset(pops), enums,
                       codomain_size=size, codomain_tag="top-of-stack",
                       respect_semantics="stutter")
    rules = {aid: (rule_of[aid], tuple(owners[aid])) for aid in rule_of}
    return CpdsModel(p, abs_, templates, rules, validate_program(p))


def load_cpds(text: str) -> CpdsModel:
    """Parse and reject models with domain problems."""
    m = parse_cpds(text)
    if m.diagnostics:
        raise ConfigError("; ".join(str(d) for d in m.diagnostics))
    return m


def stack_scope(model: CpdsModel, depth: int = 3):
    """Every state with stacks of at most ``depth`` symbols."""
    p = model.program
    per_thread = []
    for th in p.threads:
        words = [()]
        for k in range(1, depth + 1):
            words.extend(product(range(th.local_domain), repeat=k))
        per_thread.append(words)
    for g in range(p.shared_domain):
        for stacks in product(*per_thread):
            yield ProgramState(g, stacks)
