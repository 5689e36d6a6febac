"""Minimum P_s-P_t cuts of P with respect to P'.

Three routes are provided: the greedy heuristic, an exact branch-and-bound
search built around it, and an exhaustive enumeration used as ground truth.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .bounds import S_SIDE, T_SIDE, SideDistributions, future_increase
from .objective import _repaired_partner, mutual_partner
from .partition import ContingencyTable, PartSet

INF = math.inf
MAX_BRUTE_FORCE_PARTS = 22


class Constraint(str, Enum):
    """Which correspondences are admissible for a cut ``S``.

    ``CP``: any partner. ``CAND``: partner neither ∅ nor P'. ``CM``: the
    correspondence must be mutual.
    """

    CP = "cp"
    CAND = "cand"
    CM = "cm"


class Status(str, Enum):
    OPTIMAL = "optimal"
    TIME_LIMIT = "time_limit"
    INFEASIBLE = "infeasible"
    HEURISTIC = "heuristic"


@dataclass
class SolverConfig:
    time_limit: float | None = None
    # evaluate "rest to t" / "rest to s" completions at every node
    early_exit: bool = True
    tightened_bound: bool = True
    # recompute side distributions from scratch at every node and compare
    check_incremental: bool = False


@dataclass
class SolverStats:
    nodes: int = 0
    backtracks: int = 0
    leaves: int = 0
    early_exit_updates: int = 0
    wall_time: float = 0.0

    def as_dict(self, timings: bool = True) -> dict:
        d = {"nodes": self.nodes, "backtracks": self.backtracks, "leaves": self.leaves,
             "early_exit_updates": self.early_exit_updates}
        if timings:
            d["wall_time"] = self.wall_time
        return d


@dataclass
class MinCutResult:
    """Best P_s-P_t cut found; ``s_side`` contains the source part."""

    source: int
    target: int
    constraint: Constraint
    status: Status
    s_side: PartSet | None = None
    value: int | None = None
    partner: PartSet | None = None
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def feasible(self) -> bool:
        return self.value is not None


@dataclass(slots=True)
class Assignment:
    part: int
    side: int
    alternative_tried: bool = False


@dataclass
class SolverState:
    """Working state of the search: the two sides and the order they were grown in."""

    s_side: np.ndarray
    t_side: np.ndarray
    sd: SideDistributions
    stack: list[Assignment] = field(default_factory=list)
    best_so_far: float = INF
    best_cut: np.ndarray | None = None

    @classmethod
    def initial(cls, t: ContingencyTable, source: int, target: int) -> "SolverState":
        k = t.shape[0]
        if source == target:
            raise ValueError("source and target part must differ")
        if not (0 <= source < k and 0 <= target < k):
            raise IndexError(f"part index out of range 0..{k - 1}")
        s_side = np.zeros(k, dtype=bool)
        t_side = np.zeros(k, dtype=bool)
        s_side[source] = True
        t_side[target] = True
        return cls(s_side, t_side, SideDistributions(t.n[source].copy(), t.n[target].copy()))

    @property
    def unassigned(self) -> np.ndarray:
        return ~(self.s_side | self.t_side)

    @property
    def complete(self) -> bool:
        return bool((self.s_side | self.t_side).all())

    def bound(self) -> int:
        return int(np.minimum(self.sd.d_s, self.sd.d_t).sum())

    def _put(self, part: int, side: int, t: ContingencyTable) -> None:
        (self.s_side if side == S_SIDE else self.t_side)[part] = True
        self.sd.add(part, side, t)

    def _take(self, part: int, side: int, t: ContingencyTable) -> None:
        (self.s_side if side == S_SIDE else self.t_side)[part] = False
        self.sd.remove(part, side, t)

    def assign(self, part: int, side: int, t: ContingencyTable) -> None:
        self._put(part, side, t)
        self.stack.append(Assignment(part, side))

    def undo(self, t: ContingencyTable) -> Assignment:
        a = self.stack.pop()
        self._take(a.part, a.side, t)
        return a

    def flip(self, t: ContingencyTable) -> None:
        """Replace the latest assignment by its alternative."""
        a = self.stack[-1]
        self._take(a.part, a.side, t)
        a.side = 1 - a.side
        a.alternative_tried = True
        self._put(a.part, a.side, t)


def _candidates(state: SolverState, t: ContingencyTable):
    idx = np.flatnonzero(state.unassigned)
    rows = t.n[idx]
    d_s, d_t = state.sd.d_s, state.sd.d_t
    b_s = np.minimum(d_s + rows, d_t).sum(axis=1)
    b_t = np.minimum(d_s, d_t + rows).sum(axis=1)
    return idx, b_s, b_t


def _next_assignment(state: SolverState, t: ContingencyTable) -> tuple[int, int]:
    idx, b_s, b_t = _candidates(state, t)
    if not len(idx):
        raise ValueError("no unassigned part left")
    k = int(np.argmax(np.abs(b_s - b_t)))
    return int(idx[k]), S_SIDE if b_s[k] < b_t[k] else T_SIDE


def select_next_part(state: SolverState, t: ContingencyTable) -> int:
    """The unassigned part whose side matters most for the bound (lowest index on ties)."""
    return _next_assignment(state, t)[0]


def greedy_extend(state: SolverState, best_so_far: float, t: ContingencyTable) -> SolverState:
    """Grow both sides greedily while the bound stays below ``best_so_far``.

    Each selected part joins the s-side only if that gives a strictly smaller
    bound than joining the t-side. Mutates and returns ``state``.
    """
    state.best_so_far = best_so_far
    while not state.complete and state.bound() < state.best_so_far:
        part, side = _next_assignment(state, t)
        state.assign(part, side, t)
    return state


class _CutEvaluator:
    """Value of a complete cut under a constraint, from its overlap vector."""

    def __init__(self, t: ContingencyTable, constraint: Constraint):
        self.t = t
        self.constraint = Constraint(constraint)
        self.cols = t.col_sums
        if self.constraint is not Constraint.CP and t.shape[1] < 2:
            raise ValueError(f"constraint {self.constraint.value} needs at least two parts in P'")

    def value(self, mask: np.ndarray, ov: np.ndarray):
        """``(value, partner_mask)`` or ``(None, None)`` if no admissible partner exists."""
        base = int(np.minimum(ov, self.cols - ov).sum())
        if self.constraint is Constraint.CP:
            return base, 2 * ov > self.cols
        if self.constraint is Constraint.CAND:
            partner, extra = _repaired_partner(ov, self.cols)
            return base + extra, partner
        partner = mutual_partner(mask, self.t)
        if partner is None:
            return None, None
        return base, partner.mask.copy()


class _BranchAndBound:
    def __init__(self, t, source, target, constraint, config):
        self.t = t
        self.cfg = config or SolverConfig()
        self.eval = _CutEvaluator(t, constraint)
        self.cm = self.eval.constraint is Constraint.CM
        self.state = SolverState.initial(t, source, target)
        self.source, self.target = source, target
        self.stats = SolverStats()
        self.best_partner = None
        self.deadline = None
        if self.cfg.time_limit is not None:
            self.deadline = time.perf_counter() + self.cfg.time_limit
        self.timed_out = False

    def _offer(self, mask: np.ndarray, ov: np.ndarray, early: bool) -> None:
        value, partner = self.eval.value(mask, ov)
        if value is not None and value < self.state.best_so_far:
            self.state.best_so_far = value
            self.state.best_cut = mask.copy()
            self.best_partner = partner
            if early:
                self.stats.early_exit_updates += 1

    def _early_exits(self) -> None:
        st = self.state
        # rest to the t-side: S = S_s; rest to the s-side: S = P \ S_t
        self._offer(st.s_side, st.sd.d_s, early=True)
        self._offer(~st.t_side, self.eval.cols - st.sd.d_t, early=True)

    def lower_bound(self) -> int:
        st = self.state
        lb = st.bound()
        un = st.unassigned
        if self.cfg.tightened_bound and un.any():
            i_s, i_t = future_increase(st.sd, self.t)
            lb += int(np.minimum(i_s[un], i_t[un]).sum())
        return lb

    def cm_interrupted(self) -> bool:
        """A part already sits on the side opposite to most of its mass in decided columns.

        Columns more than half held by one side must be in (resp. out of) any
        mutual partner, so such a part breaks mutuality in every completion.
        """
        st, t = self.state, self.t
        cols, rows = self.eval.cols, t.row_sums
        won_s = 2 * st.sd.d_s > cols
        won_t = 2 * st.sd.d_t > cols
        if (2 * t.n[st.t_side][:, won_s].sum(axis=1) > rows[st.t_side]).any():
            return True
        return bool((2 * t.n[st.s_side][:, won_t].sum(axis=1) > rows[st.s_side]).any())

    def _pruned(self) -> bool:
        if self.lower_bound() >= self.state.best_so_far:
            return True
        return self.cm and self.cm_interrupted()

    def _visit(self) -> None:
        self.stats.nodes += 1
        if self.cfg.check_incremental:
            fresh = SideDistributions.of(self.state.s_side, self.state.t_side, self.t)
            assert np.array_equal(fresh.d_s, self.state.sd.d_s)
            assert np.array_equal(fresh.d_t, self.state.sd.d_t)
        if self.cfg.early_exit:
            self._early_exits()
        if self.deadline is not None and time.perf_counter() > self.deadline:
            self.timed_out = True

    def _descend(self) -> None:
        st, t = self.state, self.t
        while not self.timed_out and not self._pruned():
            if st.complete:
                self.stats.leaves += 1
                self._offer(st.s_side, st.sd.d_s, early=False)
                return
            part, side = _next_assignment(st, t)
            st.assign(part, side, t)
            self._visit()

    def _backtrack(self) -> bool:
        st = self.state
        while st.stack and st.stack[-1].alternative_tried:
            st.undo(self.t)
            self.stats.backtracks += 1
        if not st.stack:
            return False
        st.flip(self.t)
        self._visit()
        return True

    def run(self) -> MinCutResult:
        start = time.perf_counter()
        if self.cfg.early_exit:
            self._early_exits()
        while True:
            self._descend()
            if self.timed_out or not self._backtrack():
                break
        self.stats.wall_time = time.perf_counter() - start
        return self._result(Status.TIME_LIMIT if self.timed_out else Status.OPTIMAL)

    def _result(self, status: Status) -> MinCutResult:
        st = self.state
        res = MinCutResult(self.source, self.target, self.eval.constraint, status,
                           stats=self.stats)
        if st.best_cut is None:
            if status is Status.OPTIMAL:
                res.status = Status.INFEASIBLE
            return res
        res.s_side = PartSet(st.best_cut, table=self.t, axis=0)
        res.value = int(st.best_so_far)
        res.partner = PartSet(self.best_partner, table=self.t, axis=1)
        return res


def bnb_min_st_cut(t: ContingencyTable, s: int, t_idx: int,
                   constraint: Constraint | str = Constraint.CP,
                   config: SolverConfig | None = None) -> MinCutResult:
    """Exact minimum ``P_s``-``P_t`` cut by branch-and-bound.

    The search starts from ``({P_s}, {P_t})``, extends greedily, and on
    backtracking undoes the latest assignments until one whose alternative
    side has not been explored yet; that alternative is then extended.
    Nodes whose lower bound reaches the incumbent are cut off.

    Under ``CAND`` a trivial partner is repaired by the cheapest single flip;
    under ``CM`` only cuts admitting a mutual partner count, and the result is
    ``INFEASIBLE`` when there are none.
    """
    return _BranchAndBound(t, s, t_idx, constraint, config).run()


def greedy_min_st_cut(t: ContingencyTable, s: int, t_idx: int,
                      constraint: Constraint | str = Constraint.CP) -> MinCutResult:
    """Single greedy pass from ``({P_s}, {P_t})``; the cut value is an upper bound."""
    ev = _CutEvaluator(t, constraint)
    start = time.perf_counter()
    state = greedy_extend(SolverState.initial(t, s, t_idx), INF, t)
    stats = SolverStats(nodes=len(state.stack), leaves=1)
    value, partner = ev.value(state.s_side, state.sd.d_s)
    stats.wall_time = time.perf_counter() - start
    res = MinCutResult(s, t_idx, ev.constraint, Status.HEURISTIC, stats=stats)
    if value is None:
        res.status = Status.INFEASIBLE
        return res
    res.s_side = PartSet(state.s_side, table=t, axis=0)
    res.value = value
    res.partner = PartSet(partner, table=t, axis=1)
    return res


# -- exhaustive oracle ---------------------------------------------------------

def _bit_matrix(count: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    codes = np.arange(start, (1 << count) if stop is None else stop, dtype=np.int64)
    return ((codes[:, None] >> np.arange(count)) & 1).astype(bool)


@dataclass
class SubsetTable:
    """Objective of every subset ``S`` of P, indexed by bitmask (bit ``i`` = part ``i``).

    ``partner[code]`` is the bitmask of a best admissible partner, ``-1`` if none.
    """

    constraint: Constraint
    values: np.ndarray
    partner: np.ndarray

    @property
    def feasible(self) -> np.ndarray:
        return self.partner >= 0


def enumerate_subsets(t: ContingencyTable, constraint: Constraint | str = Constraint.CP,
                      chunk: int = 1024) -> SubsetTable:
    """Evaluate every ``(S, S')`` pair by direct set arithmetic.

    ``|U_S △ U_S'| = |U_S| + |U_S'| - 2|U_S ∩ U_S'|``; mutuality is checked
    condition by condition. Independent of the closed forms used elsewhere.
    """
    constraint = Constraint(constraint)
    k, m = t.shape
    if k > MAX_BRUTE_FORCE_PARTS:
        raise ValueError(f"enumeration limited to {MAX_BRUTE_FORCE_PARTS} parts, got {k}")
    n = t.n
    rows, cols = t.row_sums, t.col_sums
    sp = _bit_matrix(m)                      # all partners
    sp_int = sp.astype(np.int64)
    w_sp = sp_int @ cols
    q = sp_int @ n.T                         # |P_i ∩ U_S'|, shape (2^m, k)
    admissible = np.ones(1 << m, dtype=bool)
    if constraint is Constraint.CAND:
        admissible[[0, (1 << m) - 1]] = False
    values = np.full(1 << k, -1, dtype=np.int64)
    partner = np.full(1 << k, -1, dtype=np.int64)
    for lo in range(0, 1 << k, chunk):
        hi = min(lo + chunk, 1 << k)
        s = _bit_matrix(k, lo, hi)
        s_int = s.astype(np.int64)
        ov = s_int @ n                       # |U_S ∩ P'_j|
        w_s = s_int @ rows
        inter = ov @ sp_int.T
        phi = w_s[:, None] + w_sp[None, :] - 2 * inter
        ok = np.broadcast_to(admissible, phi.shape).copy()
        if constraint is Constraint.CM:
            c12 = np.where(s[:, None, :], 2 * q[None] >= rows, 2 * q[None] <= rows).all(axis=2)
            c34 = np.where(sp[None, :, :], (2 * ov >= cols)[:, None, :],
                           (2 * ov <= cols)[:, None, :]).all(axis=2)
            ok &= c12 & c34
        masked = np.where(ok, phi, np.iinfo(np.int64).max)
        best = masked.argmin(axis=1)
        has = ok.any(axis=1)
        values[lo:hi] = np.where(has, masked[np.arange(hi - lo), best], -1)
        partner[lo:hi] = np.where(has, best, -1)
    return SubsetTable(constraint, values, partner)


def brute_force_min_st_cut(t: ContingencyTable, s: int, t_idx: int,
                           constraint: Constraint | str = Constraint.CP,
                           subsets: SubsetTable | None = None) -> MinCutResult:
    """Minimum ``P_s``-``P_t`` cut by trying every assignment of the other parts.

    ``subsets`` may carry a precomputed :func:`enumerate_subsets` table for
    the same table and constraint.
    """
    k, m = t.shape
    if s == t_idx:
        raise ValueError("source and target part must differ")
    if not (0 <= s < k and 0 <= t_idx < k):
        raise IndexError(f"part index out of range 0..{k - 1}")
    constraint = Constraint(constraint)
    if constraint is not Constraint.CP and m < 2:
        raise ValueError(f"constraint {constraint.value} needs at least two parts in P'")
    start = time.perf_counter()
    if subsets is None:
        subsets = enumerate_subsets(t, constraint)
    elif subsets.constraint is not constraint:
        raise ValueError("precomputed subset table is for another constraint")
    codes = np.arange(1 << k, dtype=np.int64)
    cut = ((codes >> s) & 1).astype(bool) & ~((codes >> t_idx) & 1).astype(bool)
    cut &= subsets.feasible
    stats = SolverStats(nodes=1 << (k - 2), leaves=1 << (k - 2))
    res = MinCutResult(s, t_idx, constraint, Status.OPTIMAL, stats=stats)
    if not cut.any():
        res.status = Status.INFEASIBLE
        return res
    cand = codes[cut]
    code = int(cand[np.argmin(subsets.values[cand])])
    res.s_side = PartSet(((code >> np.arange(k)) & 1).astype(bool), table=t, axis=0)
    res.value = int(subsets.values[code])
    pcode = int(subsets.partner[code])
    res.partner = PartSet(((pcode >> np.arange(m)) & 1).astype(bool), table=t, axis=1)
    stats.wall_time = time.perf_counter() - start
    return res


SOLVERS = {
    "bnb": bnb_min_st_cut,
    "greedy": greedy_min_st_cut,
    "brute": brute_force_min_st_cut,
}


def min_st_cut(t: ContingencyTable, s: int, t_idx: int,
               constraint: Constraint | str = Constraint.CP, solver: str = "bnb",
               config: SolverConfig | None = None) -> MinCutResult:
    """Dispatch to one of the three cut routes by name."""
    try:
        fn = SOLVERS[solver]
    except KeyError:
        raise ValueError(f"unknown solver {solver!r}; choose from {sorted(SOLVERS)}") from None
    if solver == "bnb":
        return fn(t, s, t_idx, constraint, config)
    return fn(t, s, t_idx, constraint)
