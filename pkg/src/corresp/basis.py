"""Minimum cut bases and their Gomory-Hu tree representation.

``cut_basis`` builds ``|P| - 1`` cuts of P with Gusfield's scheme on top of
any of the P_s-P_t cut routes. ``bipartite_basis`` does the same for the
bipartite graph on ``P ⊔ P'`` whose edge weights are the contingency entries;
there every graph cut is a correspondence and its weight is ``phi``.
"""

from __future__ import annotations

import logging
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .objective import is_mutual, phi
from .partition import ContingencyTable, PartSet
from .solvers import Constraint, MinCutResult, SolverConfig, Status, min_st_cut

log = logging.getLogger(__name__)


@dataclass
class BasisCut:
    """One basis cut: the side containing ``source`` and its correspondence."""

    source: int
    target: int
    s_side: PartSet | None
    partner: PartSet | None
    value: int | None
    mutual: bool | None
    status: Status


@dataclass
class CutBasis:
    """``parent[i]`` / ``weight[i]`` encode the tree edge of node ``i`` (root 0 has parent -1).

    ``cuts[i - 1]`` is the cut computed for the edge ``(i, parent[i])``.
    """

    cuts: list[BasisCut]
    parent: list[int]
    weight: list[int | None]
    node_names: tuple = ()
    constraint: Constraint | None = None
    solver: str | None = None
    stats: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.parent)

    def edges(self) -> list[tuple[int, int, int | None]]:
        return [(i, self.parent[i], self.weight[i]) for i in range(1, self.size)]

    def __iter__(self):
        return iter(self.cuts)

    def __len__(self) -> int:
        return len(self.cuts)

    def path_min(self, a: int, b: int) -> int | None:
        """Smallest edge weight on the tree path between nodes ``a`` and ``b``.

        Infeasible edges (weight ``None``) are skipped; ``None`` if every edge
        on the path is infeasible.
        """
        if a == b:
            raise ValueError("path endpoints must differ")
        up_a = self._ancestors(a)
        up_b = self._ancestors(b)
        common = next(x for x in up_a if x in set(up_b))
        weights = []
        for chain in (up_a, up_b):
            for x in chain:
                if x == common:
                    break
                weights.append(self.weight[x])
        feasible = [w for w in weights if w is not None]
        return min(feasible) if feasible else None

    def _ancestors(self, a: int) -> list[int]:
        out = [a]
        while self.parent[out[-1]] >= 0:
            out.append(self.parent[out[-1]])
        return out


def _gusfield(size: int, oracle) -> tuple[list, list[int], list]:
    """Gusfield's equivalent-flow tree over nodes ``0..size-1``.

    ``oracle(i, j)`` returns ``(side_mask_containing_i or None, value, payload)``.
    """
    parent = [-1] + [0] * (size - 1)
    weight: list = [None] * size
    payloads = []
    for i in range(1, size):
        j = parent[i]
        side, value, payload = oracle(i, j)
        weight[i] = value
        payloads.append(payload)
        if side is None:
            continue
        for later in range(i + 1, size):
            if parent[later] == j and side[later]:
                parent[later] = i
    return payloads, parent, weight


def cut_basis(t: ContingencyTable, constraint: Constraint | str = Constraint.CP,
              solver: str = "bnb", config: SolverConfig | None = None) -> CutBasis:
    """``|P| - 1`` cuts of P forming a flow-equivalent tree.

    With ``solver="greedy"`` every cut value is only an upper bound on the
    true minimum for its pair. Under ``CM`` a pair without any mutual cut
    yields an ``INFEASIBLE`` entry with no cut and weight ``None``.
    """
    k = t.shape[0]
    if k < 2:
        raise ValueError("a cut basis needs at least two parts")
    constraint = Constraint(constraint)
    totals = {"nodes": 0, "backtracks": 0, "leaves": 0, "early_exit_updates": 0,
              "wall_time": 0.0}

    def oracle(i, j):
        res = min_st_cut(t, i, j, constraint, solver, config)
        for key in totals:
            totals[key] += getattr(res.stats, key)
        cut = BasisCut(i, j, res.s_side, res.partner, res.value, None, res.status)
        if res.feasible:
            cut.mutual = is_mutual(res.s_side, res.partner, t)
        side = res.s_side.mask if res.s_side is not None else None
        return side, res.value, cut

    cuts, parent, weight = _gusfield(k, oracle)
    basis = CutBasis(cuts, parent, weight, t.row_names, constraint, solver, totals)
    crossing = crossing_pairs(basis)
    if crossing:
        log.info("%d crossing pairs of basis cuts", len(crossing))
    return basis


def cuts_cross(a: np.ndarray, b: np.ndarray) -> bool:
    """Two cuts cross unless one side of one is nested in or disjoint from a side of the other."""
    return bool((a & b).any() and (a & ~b).any() and (~a & b).any() and (~a & ~b).any())


def crossing_pairs(basis: CutBasis) -> list[tuple[int, int]]:
    """Index pairs of basis cuts that cross each other."""
    sides = [(i, c.s_side.mask) for i, c in enumerate(basis.cuts) if c.s_side is not None]
    return [(i, j) for (i, a), (j, b) in combinations(sides, 2) if cuts_cross(a, b)]


def all_pairs_min_cut(t: ContingencyTable, constraint: Constraint | str = Constraint.CP,
                      solver: str = "bnb", config: SolverConfig | None = None,
                      threads: int | None = None) -> np.ndarray:
    """Symmetric matrix of pairwise minimum cut values (diagnostic; ``-1`` = infeasible).

    Pairs are solved as independent tasks; ``threads`` defaults to the
    ``CORRESP_THREADS`` environment variable, else 1.
    """
    k = t.shape[0]
    if threads is None:
        threads = int(os.environ.get("CORRESP_THREADS", "1"))
    pairs = list(combinations(range(k), 2))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results: list[MinCutResult] = list(
            pool.map(lambda p: min_st_cut(t, p[0], p[1], constraint, solver, config), pairs))
    out = np.zeros((k, k), dtype=np.int64)
    for (a, b), res in zip(pairs, results):
        out[a, b] = out[b, a] = res.value if res.feasible else -1
    return out


@dataclass(frozen=True)
class BipartiteGraph:
    """Nodes ``0..k-1`` are the parts of P, ``k..k+m-1`` those of P'."""

    k: int
    m: int
    adj: tuple  # adj[u] = tuple of (v, weight)

    @classmethod
    def from_table(cls, t: ContingencyTable) -> "BipartiteGraph":
        k, m = t.shape
        adj: list[list] = [[] for _ in range(k + m)]
        for i, j in zip(*np.nonzero(t.n)):
            w = int(t.n[i, j])
            adj[i].append((k + int(j), w))
            adj[k + int(j)].append((int(i), w))
        return cls(k, m, tuple(tuple(a) for a in adj))

    @property
    def size(self) -> int:
        return self.k + self.m

    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, w) for u in range(self.k) for v, w in self.adj[u]]

    def cut_weight(self, side) -> int:
        side = np.asarray(side, dtype=bool)
        return sum(w for u, v, w in self.edges() if side[u] != side[v])


def min_st_cut_graph(g: BipartiteGraph, src: int, dst: int) -> tuple[frozenset, int]:
    """Minimum ``src``-``dst`` cut by maximum flow along shortest augmenting paths.

    Returns the node set reachable from ``src`` in the final residual graph
    and the cut weight.
    """
    if src == dst:
        raise ValueError("source and sink must differ")
    size = g.size
    if not (0 <= src < size and 0 <= dst < size):
        raise IndexError("node out of range")
    # residual capacities; an undirected edge carries capacity both ways
    res = [dict() for _ in range(size)]
    for u in range(size):
        for v, w in g.adj[u]:
            res[u][v] = res[u].get(v, 0) + w
    flow = 0
    while True:
        pred = {src: None}
        queue = deque([src])
        while queue and dst not in pred:
            u = queue.popleft()
            for v, cap in res[u].items():
                if cap > 0 and v not in pred:
                    pred[v] = u
                    queue.append(v)
        if dst not in pred:
            return frozenset(pred), flow
        path = []
        v = dst
        while pred[v] is not None:
            path.append((pred[v], v))
            v = pred[v]
        push = min(res[u][v] for u, v in path)
        for u, v in path:
            res[u][v] -= push
            res[v][u] = res[v].get(u, 0) + push
        flow += push


def bipartite_basis(t: ContingencyTable) -> CutBasis:
    """``|P| + |P'| - 1`` best correspondences from a cut basis of the bipartite graph.

    Each cut ``(S ⊔ S', rest)`` becomes the correspondence ``(S, S')`` whose
    value equals the cut weight.
    """
    g = BipartiteGraph.from_table(t)
    k, size = g.k, g.size
    if size < 2:
        raise ValueError("the bipartite graph needs at least two nodes")

    def oracle(i, j):
        side_nodes, value = min_st_cut_graph(g, i, j)
        side = np.zeros(size, dtype=bool)
        side[list(side_nodes)] = True
        s = PartSet(side[:k], table=t, axis=0)
        sp = PartSet(side[k:], table=t, axis=1)
        cut = BasisCut(i, j, s, sp, value, is_mutual(s, sp, t), Status.OPTIMAL)
        return side, value, cut

    cuts, parent, weight = _gusfield(size, oracle)
    names = tuple(t.row_names) + tuple(t.col_names)
    return CutBasis(cuts, parent, weight, names, None, "maxflow")


def correspondence_value(cut: BasisCut, t: ContingencyTable) -> int:
    return phi(cut.s_side, cut.partner, t)


def total_dissimilarity(basis: CutBasis, t: ContingencyTable) -> Fraction:
    """Sum of the basis cut values over the total ground-set weight.

    Infeasible cuts contribute nothing.
    """
    total = sum(c.value for c in basis.cuts if c.value is not None)
    return Fraction(total, t.total)


@dataclass
class DissimilarityReport:
    d_p: Fraction
    d_and: Fraction
    d_p_greedy: Fraction
    d_and_greedy: Fraction

    @staticmethod
    def _ratio(a: Fraction, b: Fraction) -> Fraction | None:
        return None if b == 0 else a / b

    @property
    def r1(self):
        return self._ratio(self.d_p, self.d_and)

    @property
    def r2(self):
        return self._ratio(self.d_p, self.d_p_greedy)

    @property
    def r3(self):
        return self._ratio(self.d_p, self.d_and_greedy)


def dissimilarity_report(t: ContingencyTable, config: SolverConfig | None = None
                         ) -> DissimilarityReport:
    """Total dissimilarity for ``CP``/``CAND`` with exact and greedy cuts, plus their ratios."""
    def d(constraint, solver):
        return total_dissimilarity(cut_basis(t, constraint, solver, config), t)

    return DissimilarityReport(d("cp", "bnb"), d("cand", "bnb"), d("cp", "greedy"),
                               d("cand", "greedy"))
