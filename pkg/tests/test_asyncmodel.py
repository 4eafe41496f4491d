import pytest

from rrverify.abstraction import TRUE
from rrverify.asyncmodel import (full_domain, parse_async, parse_async_model, random_async_text,
                                 shared_only_abstraction)
from rrverify.baselines import free_bfs
from rrverify.errors import ConfigError, ParseError
from rrverify.explore import SAFE, VIOLATION, druba
from rrverify.model import ProgramState
from rrverify.models import example2

from corpus import sample_text


def test_example2_file_matches_builtin():
    m = parse_async_model(sample_text("example2.async"), "shared-only")
    b = example2(3)
    mine = druba(m.program, m.abstraction, TRUE)
    ref = druba(b.program, b.abstraction, TRUE)
    assert mine.abs_states == ref.abs_states == {0, 1, 2}
    assert (mine.r_max, mine.d_max) == (ref.r_max, ref.d_max)


def test_error_clause_is_property():
    m = parse_async_model(sample_text("example2.async"))
    assert m.prop.violated_by(ProgramState(2, (0, 0, 0)))
    assert not m.prop.violated_by(ProgramState(1, (0, 0, 0)))
    assert druba(m.program, m.abstraction, m.prop).verdict == VIOLATION


def test_copies_share_rules():
    m = parse_async(sample_text("handoff.async"))
    assert [t.name for t in m.program.threads] == ["P#0", "P#1"]
    assert m.program.threads[0].actions == m.program.threads[1].actions


def test_shared_only_classification_is_exhaustive():
    m = parse_async(sample_text("example2.async"))
    abs_ = shared_only_abstraction(m.program)
    # rules that only fire on shared 0 still respect the shared value
    assert abs_.disrespects == frozenset()
    m = parse_async(sample_text("handoff.async"))
    abs_ = shared_only_abstraction(m.program)
    assert abs_.disrespects  # moves depend on the local pc


def test_full_domain_size():
    m = parse_async(sample_text("handoff.async"))
    assert len(list(full_domain(m.program))) == 4 * 2 * 2


@pytest.mark.parametrize("text, match", [
    ("async\nshared 2\nthread A copies 1\n locals 1\n linit 0\nend\n", "init"),
    ("async\ninit 0\nthread A copies 1\n locals 1\n linit 0\nend\n", "shared"),
    ("async\nshared 2\ninit 0\n", "no threads"),
    ("async\nshared 2\ninit 0\nthread A copies 1\n locals 1\nend\n", "linit"),
    ("async\nshared 2\ninit 0\nthread A copies 1\n locals 1\n linit 0\n rule 0 0 -> 1\nend\n",
     "rule"),
    ("async\nshared 2\ninit 0\nthread A copies 0\n", "copies"),
])
def test_parse_errors(text, match):
    with pytest.raises(ParseError, match=match):
        parse_async(text)


def test_rule_line_numbers():
    text = "async\nshared 2\ninit 0\nthread A copies 1\n locals 1\n linit 0\n rule 0 x -> 1 0\nend\n"
    with pytest.raises(ParseError) as e:
        parse_async(text)
    assert e.value.line == 7


def test_out_of_domain_rule_is_config_error():
    text = "async\nshared 2\ninit 0\nthread A copies 1\n locals 1\n linit 0\n rule 0 0 -> 3 0\nend\n"
    with pytest.raises(ConfigError, match="line 7"):
        parse_async(text)


def test_unknown_abstraction():
    with pytest.raises(ConfigError):
        parse_async_model(sample_text("handoff.async"), "octagon")


@pytest.mark.parametrize("seed", range(8))
def test_random_models_parse_and_agree_with_oracle(seed):
    text = random_async_text(seed)
    assert text == random_async_text(seed)
    m = parse_async_model(text)
    rep = druba(m.program, m.abstraction, TRUE)
    assert rep.verdict == SAFE
    assert set(rep.abs_states) == free_bfs(m.program).states


@pytest.mark.parametrize("seed", range(8))
def test_shared_only_is_sound(seed):
    m = parse_async_model(random_async_text(seed), "shared-only")
    rep = druba(m.program, m.abstraction, TRUE)
    truth = {s.shared for s in free_bfs(m.program).states}
    assert set(rep.abs_states) <= truth
    # enumerators range over unreachable local states too, so unknown is possible
    if rep.verdict == SAFE:
        assert set(rep.abs_states) == truth
