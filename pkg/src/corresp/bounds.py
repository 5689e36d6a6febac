"""Admissible lower bounds for the P_s-P_t cut search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .partition import ContingencyTable, as_mask

S_SIDE, T_SIDE = 0, 1


@dataclass
class SideDistributions:
    """Overlap of each side's union with every part of P'.

    ``d_s[j] = |U_{S_s} ∩ P'_j|`` and ``d_t[j] = |U_{S_t} ∩ P'_j|``, kept up to
    date incrementally as parts join or leave a side.
    """

    d_s: np.ndarray
    d_t: np.ndarray

    @classmethod
    def empty(cls, t: ContingencyTable) -> "SideDistributions":
        m = t.shape[1]
        return cls(np.zeros(m, dtype=np.int64), np.zeros(m, dtype=np.int64))

    @classmethod
    def of(cls, s_side, t_side, t: ContingencyTable) -> "SideDistributions":
        k = t.shape[0]
        s_mask, t_mask = as_mask(s_side, k), as_mask(t_side, k)
        if (s_mask & t_mask).any():
            raise ValueError("the two sides must be disjoint")
        return cls(t.n[s_mask].sum(axis=0), t.n[t_mask].sum(axis=0))

    def add(self, part: int, side: int, t: ContingencyTable) -> None:
        (self.d_s if side == S_SIDE else self.d_t)[:] += t.n[part]

    def remove(self, part: int, side: int, t: ContingencyTable) -> None:
        (self.d_s if side == S_SIDE else self.d_t)[:] -= t.n[part]

    def copy(self) -> "SideDistributions":
        return SideDistributions(self.d_s.copy(), self.d_t.copy())


def bound_b(sd: SideDistributions, t: ContingencyTable | None = None) -> int:
    """``Σ_j min(d_s[j], d_t[j])``: no completion of the two sides can do better."""
    return int(np.minimum(sd.d_s, sd.d_t).sum())


def majority_columns(sd: SideDistributions, t: ContingencyTable) -> tuple[np.ndarray, np.ndarray]:
    """Columns already held by at least half on the s-side, resp. the t-side.

    A column held exactly half by both sides belongs to neither.
    """
    cols = t.col_sums
    s_half = 2 * sd.d_s >= cols
    t_half = 2 * sd.d_t >= cols
    both = s_half & t_half
    return s_half & ~both, t_half & ~both


def future_increase(sd: SideDistributions, t: ContingencyTable) -> tuple[np.ndarray, np.ndarray]:
    """Per-part forced increase ``(I_s, I_t)`` of the objective.

    Putting part ``P`` on the s-side costs at least its mass in columns the
    t-side already dominates, and vice versa.
    """
    maj_s, maj_t = majority_columns(sd, t)
    return t.n[:, maj_t].sum(axis=1), t.n[:, maj_s].sum(axis=1)


def bound_tightened(sd: SideDistributions, unassigned, t: ContingencyTable) -> int:
    """``bound_b`` plus ``Σ min(I_s(P), I_t(P))`` over the unassigned parts."""
    mask = as_mask(unassigned, t.shape[0])
    base = bound_b(sd)
    if not mask.any():
        return base
    i_s, i_t = future_increase(sd, t)
    return base + int(np.minimum(i_s[mask], i_t[mask]).sum())
