import pytest

from rrverify.abstraction import brute_force_successors, verify_respect
from rrverify.cpds import (CpdsRule, load_cpds, parse_cpds, pop_abs_successors, stack_scope,
                           top_of_stack)
from rrverify.errors import ConfigError, ParseError
from rrverify.explore import SAFE, UNKNOWN, druba
from rrverify.model import ProgramState

from corpus import sample_text

TWO_THREADS = """\
cpds
shared 2
init 0
thread A copies 2
  alphabet 3
  stack 0 1
  rule 0 0 -> 1 push 2 0
  rule 1 2 -> 0 over 1
  rule 0 1 -> 0 pop
end
"""


def test_parse_builds_threads_and_initial_stacks():
    m = parse_cpds(TWO_THREADS)
    p = m.program
    assert p.n == 2 and [t.name for t in p.threads] == ["A#0", "A#1"]
    assert p.initial == {ProgramState(0, ((0, 1), (0, 1)))}
    assert p.action_ids == ["A:0:push", "A:1:over", "A:2:pop"]
    assert m.abstraction.disrespects == {"A:2:pop"}


def test_rule_semantics():
    push = CpdsRule("push", 0, 0, 1, (2, 0))
    assert list(push.apply(0, (0, 1))) == [(1, (2, 0, 1))]
    over = CpdsRule("over", 1, 2, 0, (1,))
    assert list(over.apply(1, (2, 0))) == [(0, (1, 0))]
    pop = CpdsRule("pop", 0, 1, 0)
    assert list(pop.apply(0, (1,))) == [(0, ())]
    assert list(pop.apply(0, ())) == []


def test_empty_stack_stutters():
    m = parse_cpds(TWO_THREADS)
    s = ProgramState(0, ((), (0,)))
    assert m.program.successors(s, 0) == [s]


def test_top_of_stack():
    assert top_of_stack(ProgramState(1, ((2, 0), ()))) == (1, 2, None)


def test_pop_enumerator_exposes_every_symbol():
    rule = CpdsRule("pop", 0, 1, 0)
    assert pop_abs_successors((0, 1, 2), rule, 0, 3) == {(0, x, 2) for x in (0, 1, 2, None)}
    assert pop_abs_successors((1, 1, 2), rule, 0, 3) == set()


def test_pop_enumerator_matches_brute_force():
    m = parse_cpds(TWO_THREADS)
    enum = m.abstraction.enumerators["A:2:pop"]
    table = brute_force_successors(m.program, m.abstraction, "A:2:pop", stack_scope(m, 3),
                                   semantics="enabled")
    assert table
    for (a, t), succ in table.items():
        assert succ == enum(a, t, 2)


@pytest.mark.parametrize("kind, respects", [("push", True), ("over", True), ("pop", False)])
def test_respect_classification(kind, respects):
    m = parse_cpds(TWO_THREADS)
    x = next(a for a in m.program.action_ids if a.endswith(kind))
    res = verify_respect(m.program, m.abstraction, x, stack_scope(m, 3))
    assert res.respects is respects
    assert m.abstraction.classify(x) == ("respects" if respects else "disrespects")


@pytest.mark.parametrize("text, line", [
    ("cpds\nshared 2\ninit 0\nthread A copies 1\n  alphabet 2\n  rule 0 0 -> 1 jump\nend\n", 6),
    ("cpds\nshared 2\nthread A copies 1\n  alphabet 2\n  bogus\nend\n", 5),
    ("cpds\nshared x\n", 2),
    ("async\n", 1),
    ("cpds\nshared 2\ninit 0\nthread A copies 1\n alphabet 2\nend\nthread A copies 1\n", 7),
])
def test_parse_errors_have_lines(text, line):
    with pytest.raises(ParseError) as e:
        parse_cpds(text)
    assert e.value.line == line


def test_missing_init():
    with pytest.raises(ParseError, match="init"):
        parse_cpds("cpds\nshared 2\nthread A copies 1\n alphabet 1\nend\n")


def test_domain_problems_become_config_errors():
    text = TWO_THREADS.replace("rule 0 0 -> 1 push 2 0", "rule 0 0 -> 5 push 2 0")
    assert parse_cpds(text).diagnostics
    with pytest.raises(ConfigError):
        load_cpds(text)


def test_samples_verify():
    m = load_cpds(sample_text("recursion.cpds"))
    assert druba(m.program, m.abstraction).verdict == SAFE
    m = load_cpds(sample_text("example1.cpds"))
    rep = druba(m.program, m.abstraction)
    # the pop may expose a symbol that never sits below the popped one
    assert rep.verdict == UNKNOWN and rep.counterexample[1].endswith("pop")
