"""Correspondence objectives between the parts of two partitions.

All values are exact integers computed from a :class:`ContingencyTable`.
Half-overlap comparisons are done on doubled integers (``2 * overlap`` vs.
part weight) so that exact ties are detected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .partition import ContingencyTable, PartSet, as_mask

MAX_TIE_COLUMNS = 20


def peak(numer: int, denom: int) -> int:
    """``denom * peak(numer / denom)``, i.e. ``min(numer, denom - numer)``."""
    if denom <= 0:
        raise ValueError("peak needs a positive denominator")
    if not 0 <= numer <= denom:
        raise ValueError(f"peak argument {numer}/{denom} outside [0, 1]")
    return min(numer, denom - numer)


def _ov(s, t: ContingencyTable) -> np.ndarray:
    if isinstance(s, PartSet) and s._table is t and s._axis == 0:
        return s.overlap
    return t.overlap(s)


def phi(s, s_prime, t: ContingencyTable) -> int:
    """Weight of the symmetric difference ``U_S △ U_S'``."""
    ov = _ov(s, t)
    inside = as_mask(s_prime, t.shape[1])
    return int(ov[~inside].sum() + (t.col_sums[inside] - ov[inside]).sum())


def optimal_partner(s, t: ContingencyTable) -> PartSet:
    """Canonical optimal partner: the parts of P' more than half covered by ``U_S``."""
    ov = _ov(s, t)
    return PartSet(2 * ov > t.col_sums, table=t, axis=1)


def phi_min(s, t: ContingencyTable) -> int:
    """Best correspondence value of ``S`` over all partners, ``Σ_j min(ov_j, |P'_j| - ov_j)``."""
    ov = _ov(s, t)
    return int(np.minimum(ov, t.col_sums - ov).sum())


def _repaired_partner(ov: np.ndarray, sizes: np.ndarray) -> tuple[np.ndarray, int]:
    """Canonical partner forced away from ∅ and P' by the cheapest single flip.

    Returns the partner mask and the extra cost over the unconstrained optimum.
    """
    partner = 2 * ov > sizes
    if partner.any() and not partner.all():
        return partner, 0
    gap = np.abs(sizes - 2 * ov)
    j = int(np.argmin(gap))
    partner = partner.copy()
    partner[j] = not partner[j]
    return partner, int(gap[j])


def phi_star(s, t: ContingencyTable) -> int:
    """Best value of ``S`` over nontrivial partners (``0`` when ``S`` is ∅ or P)."""
    mask = as_mask(s, t.shape[0])
    if not mask.any() or mask.all():
        return 0
    if t.shape[1] < 2:
        raise ValueError("no nontrivial partner exists when P' has a single part")
    ov = _ov(s, t)
    _, extra = _repaired_partner(ov, t.col_sums)
    return int(np.minimum(ov, t.col_sums - ov).sum()) + extra


def nontrivial_partner(s, t: ContingencyTable) -> PartSet:
    """An optimal partner of ``S`` among ``∅ ≠ S' ⊊ P'``."""
    if t.shape[1] < 2:
        raise ValueError("no nontrivial partner exists when P' has a single part")
    partner, _ = _repaired_partner(_ov(s, t), t.col_sums)
    return PartSet(partner, table=t, axis=1)


def phi_star_constrained(s, i_prime: int, j_prime: int, t: ContingencyTable) -> int:
    """Best value of ``S`` over partners that contain ``P'_i`` and exclude ``P'_j``."""
    m = t.shape[1]
    if i_prime == j_prime:
        raise ValueError("the included and excluded parts must differ")
    if not (0 <= i_prime < m and 0 <= j_prime < m):
        raise IndexError("partner part index out of range")
    ov = _ov(s, t)
    sizes = t.col_sums
    rest = np.ones(m, dtype=bool)
    rest[[i_prime, j_prime]] = False
    free = np.minimum(ov[rest], sizes[rest] - ov[rest]).sum()
    return int(ov[j_prime] + sizes[i_prime] - ov[i_prime] + free)


def is_mutual(s, s_prime, t: ContingencyTable) -> bool:
    """Whether every part on each side is at least half inside the other side's union
    and every part outside is at most half inside it."""
    s_mask = as_mask(s, t.shape[0])
    p_mask = as_mask(s_prime, t.shape[1])
    ov = _ov(s_mask, t)
    q = t.n[:, p_mask].sum(axis=1)  # |P_i ∩ U_S'|
    rows, cols = t.row_sums, t.col_sums
    return bool(
        (2 * q[s_mask] >= rows[s_mask]).all()
        and (2 * q[~s_mask] <= rows[~s_mask]).all()
        and (2 * ov[p_mask] >= cols[p_mask]).all()
        and (2 * ov[~p_mask] <= cols[~p_mask]).all()
    )


def mutual_partner(s, t: ContingencyTable) -> PartSet | None:
    """A partner ``S'`` making ``(S, S')`` mutual, or ``None`` if there is none.

    Parts of P' more than half covered by ``U_S`` must be in ``S'`` and parts
    less than half covered must be out; only exactly-half parts are free, and
    every such choice gives the same value ``phi_min(S)``. The free parts are
    enumerated starting from the canonical (all excluded) choice.
    """
    mask = as_mask(s, t.shape[0])
    ov = _ov(mask, t)
    cols, rows = t.col_sums, t.row_sums
    forced = 2 * ov > cols
    ties = np.flatnonzero(2 * ov == cols)
    if len(ties) > MAX_TIE_COLUMNS:
        raise ValueError(f"{len(ties)} exactly-half columns exceed the enumeration cap")
    base = t.n[:, forced].sum(axis=1)
    # enumerate tie subsets as rows of a 0/1 matrix, canonical choice first
    if len(ties):
        choices = np.array(list(product((0, 1), repeat=len(ties))), dtype=np.int64)
        choices = choices[np.argsort(choices.sum(axis=1), kind="stable")]
        q = base[None, :] + choices @ t.n[:, ties].T
    else:
        choices = np.zeros((1, 0), dtype=np.int64)
        q = base[None, :]
    ok = np.where(mask, 2 * q >= rows, 2 * q <= rows).all(axis=1)
    hit = np.flatnonzero(ok)
    if not len(hit):
        return None
    partner = forced.copy()
    partner[ties] = choices[hit[0]].astype(bool)
    return PartSet(partner, table=t, axis=1)


@dataclass(frozen=True)
class Correspondence:
    """A pair ``(S, S')`` of part sets with its value ``phi(S, S')``."""

    s: PartSet
    s_prime: PartSet
    value: int
    mutual: bool

    @classmethod
    def evaluate(cls, s, s_prime, t: ContingencyTable) -> "Correspondence":
        s = s if isinstance(s, PartSet) else PartSet(s, table=t, axis=0)
        s_prime = s_prime if isinstance(s_prime, PartSet) else PartSet(s_prime, table=t, axis=1)
        return cls(s, s_prime, phi(s, s_prime, t), is_mutual(s, s_prime, t))
