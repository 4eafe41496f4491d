import pytest

from rrverify.abstraction import (Abstraction, alpha_image, brute_force_successors, closure_test,
                                  identity_abstraction, make_predicate_abstraction,
                                  table_enumerator, verify_respect)
from rrverify.errors import ConfigError
from rrverify.model import ProgramState
from rrverify.models import example2_model, load_builtin, program_p_model


def test_identity_alpha_is_identity():
    p = example2_model(3)
    s = next(iter(p.initial))
    assert identity_abstraction(p)(s) == s


def test_alpha_image():
    shared = Abstraction("shared", lambda s: s.shared)
    states = [ProgramState(g, (0, 0, 0)) for g in (0, 1, 1, 2)]
    assert alpha_image(shared, states) == {0, 1, 2}


def test_predicate_abstraction_shape():
    abs_ = make_predicate_abstraction("a", lambda s: s.locals[0], [lambda s: s.shared > 0],
                                      pc_range=4)
    assert abs_(ProgramState(3, (2, 0))) == (2, 1)
    assert abs_.codomain_size == 8


def test_closure_with_no_disrespects_is_trivially_closed():
    p = example2_model(3)
    res = closure_test({0}, Abstraction("shared", lambda s: s.shared), p)
    assert res.closed and res.checks == 0


def test_closure_finds_escape():
    p = example2_model(3)
    enum = table_enumerator({(0, 2): {2}})
    abs_ = Abstraction("shared", lambda s: s.shared, frozenset({"T2:0->2"}), {"T2:0->2": enum})
    res = closure_test({0, 1}, abs_, p)
    assert not res.closed
    assert res.counterexample == (0, "T2:0->2", 2, 2)
    assert closure_test({0, 1, 2}, abs_, p).closed


def test_closure_needs_enumerators():
    p = example2_model(3)
    abs_ = Abstraction("shared", lambda s: s.shared, frozenset({"T0:0->1"}))
    with pytest.raises(ConfigError):
        closure_test({0}, abs_, p)


def test_respect_refuted_with_witness():
    # shared 0 and 2 look alike, but only 0 moves to 1
    p = example2_model(3)
    abs_ = Abstraction("not-one", lambda s: s.shared != 1, respect_semantics="stutter")
    scope = [ProgramState(g, (0, 0, 0)) for g in range(3)]
    res = verify_respect(p, abs_, "T0:0->1", scope)
    assert not res.respects and res.label == "refuted"
    s1, s2, t, a, b = res.witness
    assert abs_(s1) == abs_(s2) and abs_(a) != abs_(b)


def test_respect_confirmed_when_conclusive():
    p = example2_model(3)
    scope = [ProgramState(g, (0, 0, 0)) for g in range(3)]
    res = verify_respect(p, identity_abstraction(p), "T0:0->1", scope, conclusive=True)
    assert res.respects and res.label == "confirmed"
    assert verify_respect(p, identity_abstraction(p), "T0:0->1", scope).label == "bounded-confirmed"


def test_brute_force_successors_enabled_semantics():
    p = example2_model(3)
    abs_ = Abstraction("shared", lambda s: s.shared)
    scope = [ProgramState(g, (0, 0, 0)) for g in range(3)]
    table = brute_force_successors(p, abs_, "T2:0->2", scope)
    assert dict(table) == {(0, 2): {2}}


# Enumerators must cover every abstract successor found by brute force over the
# bounded scope.  Where an enumerator is exact, the two must agree.

@pytest.mark.parametrize("name, abstraction, action, n", [
    ("program-p", "alpha1", "if", 2), ("program-p", "alpha1", "if", 3),
    ("program-p", "alpha2", "m++", 2), ("program-p", "alpha2", "m++", 3),
    ("program-p", "alpha2", "m++", 4),
    ("ticket-lock", "predicates", "exit", 2), ("ticket-lock", "predicates", "exit", 3),
])
def test_enumerator_covers_brute_force(name, abstraction, action, n):
    b = load_builtin(name, n, abstraction)
    enum = b.abstraction.enumerators[action]
    table = brute_force_successors(b.program, b.abstraction, action, b.scope())
    for (a, t), succ in table.items():
        assert succ <= set(enum(a, t, n)), (a, t)
        # the n-independent form used for unbounded checks covers the fixed-n one
        assert set(enum(a, t, n)) <= set(enum(a, min(t, 1), None))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_alpha2_other_threads_exact(n):
    b = load_builtin("program-p", n, "alpha2")
    enum = b.abstraction.enumerators["m++"]
    table = brute_force_successors(b.program, b.abstraction, "m++", b.scope())
    for (a, t), succ in table.items():
        if t != 0:
            assert succ == set(enum(a, t, n)), (a, t)


@pytest.mark.parametrize("n", [2, 3])
def test_ticket_lock_exit_exact(n):
    b = load_builtin("ticket-lock", n)
    enum = b.abstraction.enumerators["exit"]
    table = brute_force_successors(b.program, b.abstraction, "exit", b.scope())
    seen = {a for a, _ in table}
    for a in seen:
        for t in range(n):
            assert table.get((a, t), set()) == set(enum(a, t, n))


@pytest.mark.parametrize("name, n", [("program-p", 2), ("program-p", 3), ("ticket-lock", 2),
                                     ("ticket-lock", 3)])
def test_invariant_is_inductive(name, n):
    b = load_builtin(name, n)
    p = b.program
    assert all(b.invariant(s) for s in p.initial)
    for s in b.scope():
        assert b.invariant(s)
        for t in range(n):
            for s2 in p.successors(s, t):
                assert b.invariant(s2), (s, t, s2)


def test_scope_is_nonempty_and_bounded():
    states = list(load_builtin("program-p", 2).scope())
    assert states
    assert all(-5 <= s.shared[1] <= 5 for s in states)
    assert program_p_model(2).initial <= set(states)
