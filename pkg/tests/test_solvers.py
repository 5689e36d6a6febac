import numpy as np
import pytest
from hypothesis import given

from corresp import (
    Constraint,
    ContingencyTable,
    SolverConfig,
    SolverState,
    Status,
    bnb_min_st_cut,
    brute_force_min_st_cut,
    enumerate_subsets,
    greedy_extend,
    greedy_min_st_cut,
    is_mutual,
    min_st_cut,
    phi,
    phi_min,
    phi_star,
    select_next_part,
)
from corresp.bounds import S_SIDE, T_SIDE
from corresp.solvers import INF, _BranchAndBound
from corresp.synthetic import random_table

from conftest import tables

CONSTRAINTS = list(Constraint)


def test_select_next_part_singleton(fig5):
    assert select_next_part(SolverState.initial(fig5, 0, 1), fig5) == 2


def test_select_next_part_largest_delta():
    t = ContingencyTable(np.array([[5, 0], [0, 5], [1, 0], [3, 0]]))
    assert select_next_part(SolverState.initial(t, 0, 1), t) == 3


def test_select_next_part_tie_lowest_index():
    t = ContingencyTable(np.array([[5, 0], [0, 5], [1, 0], [1, 0]]))
    assert select_next_part(SolverState.initial(t, 0, 1), t) == 2


def test_select_next_part_needs_candidate(fig5):
    st = SolverState.initial(fig5, 0, 1)
    st.assign(2, S_SIDE, fig5)
    with pytest.raises(ValueError):
        select_next_part(st, fig5)


def test_greedy_extend_fig5_tie_to_t(fig5):
    st = greedy_extend(SolverState.initial(fig5, 0, 1), INF, fig5)
    assert st.complete
    assert st.stack[0].part == 2 and st.stack[0].side == T_SIDE
    assert phi_min(st.s_side, fig5) == 1


def test_greedy_extend_complete_state_unchanged(fig5):
    st = SolverState.initial(fig5, 0, 1)
    st.assign(2, S_SIDE, fig5)
    greedy_extend(st, INF, fig5)
    assert len(st.stack) == 1


def test_greedy_extend_premature_exit():
    t = ContingencyTable(np.array([[2, 1], [1, 2], [1, 1]]))
    st = SolverState.initial(t, 0, 1)
    assert st.bound() > 0
    greedy_extend(st, 0, t)
    assert not st.stack


def test_bnb_fig5_cp(fig5):
    res = bnb_min_st_cut(fig5, 0, 1)
    assert res.status is Status.OPTIMAL and res.value == 1
    assert res.s_side in ({0}, {0, 2})


def test_bnb_two_parts():
    t = ContingencyTable(np.array([[3, 1], [2, 4]]))
    res = bnb_min_st_cut(t, 0, 1, config=SolverConfig(early_exit=False))
    assert res.value == phi_min([0], t)
    assert res.stats.backtracks == 0


def test_bnb_fig5_cm(fig5):
    res = bnb_min_st_cut(fig5, 0, 2, Constraint.CM)
    assert res.value == 1 and res.s_side == {0} and res.partner == {0}
    assert is_mutual(res.s_side, res.partner, fig5)


def test_brute_examples(fig5):
    assert brute_force_min_st_cut(fig5, 0, 1).value == 1
    assert brute_force_min_st_cut(fig5, 0, 2, "cand").value == 1
    with pytest.raises(ValueError):
        brute_force_min_st_cut(fig5, 1, 1)


def test_errors(fig5):
    with pytest.raises(ValueError):
        bnb_min_st_cut(fig5, 0, 0)
    one_col = ContingencyTable(np.array([[1], [2]]))
    with pytest.raises(ValueError):
        bnb_min_st_cut(one_col, 0, 1, "cand")
    with pytest.raises(ValueError):
        min_st_cut(fig5, 0, 1, solver="nope")
    big = ContingencyTable(np.ones((23, 2), dtype=int))
    with pytest.raises(ValueError, match="limited"):
        brute_force_min_st_cut(big, 0, 1)


def test_cm_infeasible_pair():
    t = ContingencyTable(np.array([[1, 0], [0, 1], [1, 0]]))
    for solve in (bnb_min_st_cut, brute_force_min_st_cut):
        res = solve(t, 0, 2, Constraint.CM)
        assert res.status is Status.INFEASIBLE and res.value is None


def test_time_limit_keeps_incumbent():
    t = random_table(np.random.default_rng(3), 18, 8, 400, 5, min_parts=18, min_parts_prime=8)
    res = bnb_min_st_cut(t, 0, 1, config=SolverConfig(time_limit=1e-6))
    assert res.status is Status.TIME_LIMIT
    assert res.value is not None and res.value >= brute_force_min_st_cut(t, 0, 1).value


@given(tables(max_k=7, max_m=5, min_m=2))
def test_bnb_matches_brute(t):
    k = t.shape[0]
    for c in CONSTRAINTS:
        sub = enumerate_subsets(t, c)
        for s in range(k):
            for q in range(k):
                if s == q:
                    continue
                want = brute_force_min_st_cut(t, s, q, c, sub)
                got = bnb_min_st_cut(t, s, q, c, SolverConfig(check_incremental=True))
                assert got.status == want.status
                assert got.value == want.value
                if got.feasible:
                    assert got.source in got.s_side and got.target not in got.s_side


@given(tables(max_k=7, max_m=5, min_m=2))
def test_result_values_recompute(t):
    for c in CONSTRAINTS:
        res = bnb_min_st_cut(t, 0, 1, c)
        if not res.feasible:
            continue
        assert phi(res.s_side, res.partner, t) == res.value
        if c is Constraint.CAND:
            assert res.value == phi_star(res.s_side, t)
            assert not res.partner.is_trivial()
        if c is Constraint.CM:
            assert is_mutual(res.s_side, res.partner, t)


@given(tables(max_k=7, max_m=5, min_m=2))
def test_options_do_not_change_value(t):
    base = bnb_min_st_cut(t, 0, 1, "cp").value
    for cfg in (SolverConfig(early_exit=False), SolverConfig(tightened_bound=False),
                SolverConfig(early_exit=False, tightened_bound=False)):
        assert bnb_min_st_cut(t, 0, 1, "cp", cfg).value == base


@given(tables(max_k=8, max_m=5, min_m=2))
def test_greedy_upper_bound_and_first_pass(t):
    k = t.shape[0]
    for c in CONSTRAINTS:
        g = greedy_min_st_cut(t, 0, k - 1, c)
        b = bnb_min_st_cut(t, 0, k - 1, c)
        if g.feasible:
            assert g.status is Status.HEURISTIC
            assert g.value >= b.value
    st = greedy_extend(SolverState.initial(t, 0, k - 1), INF, t)
    assert st.complete


@given(tables(max_k=8, max_m=5))
def test_node_count_bound(t):
    k = t.shape[0]
    res = bnb_min_st_cut(t, 0, 1, config=SolverConfig(early_exit=False))
    assert res.stats.nodes <= (1 << (k - 2)) * k


class _Instrumented(_BranchAndBound):
    """Records every state cut off by the CM interruption rule."""

    def __init__(self, *args):
        super().__init__(*args)
        self.interrupted = []

    def cm_interrupted(self):
        hit = super().cm_interrupted()
        if hit:
            self.interrupted.append((self.state.s_side.copy(), self.state.t_side.copy()))
        return hit


@given(tables(max_k=7, max_m=5, min_m=2))
def test_cm_interruption_sound(t):
    k = t.shape[0]
    sub = enumerate_subsets(t, Constraint.CM)
    codes = np.arange(1 << k)
    bits = ((codes[:, None] >> np.arange(k)) & 1).astype(bool)
    for s, q in ((0, 1), (k - 1, 0)):
        bb = _Instrumented(t, s, q, Constraint.CM, SolverConfig(early_exit=False))
        bb.run()
        for s_side, t_side in bb.interrupted:
            completions = (bits[:, s_side].all(axis=1)) & ~(bits[:, t_side].any(axis=1))
            # no completion of an interrupted state admits a mutual partner
            assert not sub.feasible[completions].any()
