from itertools import product

import pytest

from rrverify.abstraction import TRUE
from rrverify.baselines import (ai_style_verify, check_rr_nonmonotonicity, delay_bounded_test,
                                free_bfs, grid_order, naive_grid, naive_replay, rr_reach)
from rrverify.explore import SAFE, druba
from rrverify.models import example2, example3_model, load_builtin
from rrverify.schedule import validate_rr_path


def test_free_bfs_example2():
    b = example2(3)
    res = free_bfs(b.program)
    assert {s.shared for s in res.states} == {0, 1, 2}
    assert res.verdict == SAFE


def test_free_bfs_cap():
    res = free_bfs(load_builtin("ticket-lock", 2).program, state_cap=20)
    assert res.capped and res.verdict == "unknown"


def test_free_bfs_violation_path():
    b = example2(3, error=2)
    res = free_bfs(b.program, b.prop, b.abstraction)
    assert res.violation[-1].shared == 2 and len(res.violation) == 2


def test_rr_reach_zero_bounds_are_initial():
    p = example2(3).program
    assert rr_reach(p, 0, 0) == (p.initial, 0)


def test_naive_grid_cell_zero():
    b = example2(3)
    assert naive_grid(b.program, b.abstraction, 0, 0)[(0, 0)].abs_states == {0}


def test_rr_reach_agrees_with_path_validator():
    # every state in R[r,d] is reached by some schedule the validator accepts;
    # checked here by brute-force enumeration of short schedules
    p = example2(3).program
    r, d = 2, 2
    via_paths = set()
    for k in range(0, 7):
        for f in product(range(3), repeat=k):
            paths = [[next(iter(p.initial))]]
            for t in f:
                paths = [q + [s2] for q in paths for s2 in p.successors(q[-1], t)]
            for q in paths:
                if validate_rr_path(p, q, f, r, d):
                    via_paths.add(q[-1])
    assert via_paths == rr_reach(p, r, d)[0]


def test_grid_order_diagonals():
    cells = list(grid_order(2, 2))
    assert cells[:6] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(cells) == 9 and len(set(cells)) == 9


def test_naive_replay_exceeds_frontier():
    b = load_builtin("program-p", 2, "alpha2")
    rep = druba(b.program, b.abstraction, b.prop, trace=True)
    naive = naive_replay(b.program, b.abstraction, [(c.r, c.d) for c in rep.checkpoints])
    assert rep.image_calls_total < naive


@pytest.mark.parametrize("name, n, abstraction", [
    ("example2", 3, None), ("program-p", 2, "alpha2"), ("ticket-lock", 2, None),
])
def test_eager_closure_agrees_and_checks_more(name, n, abstraction):
    b = load_builtin(name, n, abstraction)
    ours = druba(b.program, b.abstraction, b.prop)
    ai = ai_style_verify(b.program, b.abstraction, b.prop)
    assert ai.verdict == ours.verdict == SAFE
    assert ai.abs_states == ours.abs_states
    assert ai.closure_checks > ours.closure_checks


def test_tester_finds_shared_two():
    b = example2(3, error=2)
    res = delay_bounded_test(b.program, b.prop, b.abstraction)
    assert res.found and res.cell[1] == 2
    assert res.witness.schedule == (2,)


def test_tester_within_one_delay_finds_nothing():
    b = example2(3, error=2)
    res = delay_bounded_test(b.program, b.prop, b.abstraction, d_max=1)
    assert not res.found and res.witness is None


def test_tester_true_property():
    b = example2(3)
    assert not delay_bounded_test(b.program, TRUE, b.abstraction, 4, 4).found


def test_nonmonotonic_in_thread_count():
    c = check_rr_nonmonotonicity(example3_model, 3, 0, 1)
    assert not c.contained and c.witness == (1, 1)
