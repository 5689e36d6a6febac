"""Ground sets, partitions and their contingency table."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np


class DataError(ValueError):
    """Input data violates a structural requirement (bad file, bad labels)."""


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class GroundSet:
    """Ordered, weighted set of opaque element identifiers."""

    elements: tuple
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.weights.shape != (len(self.elements),):
            raise DataError("one weight per element is required")
        if len(set(self.elements)) != len(self.elements):
            raise DataError("element identifiers must be unique")
        if (self.weights < 0).any():
            raise DataError("element weights must be nonnegative")

    @classmethod
    def of(cls, elements: Iterable[Hashable], weights=None) -> "GroundSet":
        elements = tuple(elements)
        if weights is None:
            weights = np.ones(len(elements), dtype=np.int64)
        elif isinstance(weights, Mapping):
            weights = [weights[e] for e in elements]
        return cls(elements, weights)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroundSet):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.weights, other.weights)

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of every ground-set element to one of ``k`` nonempty parts.

    ``labels[e]`` is the dense part index of element ``e``; ``names[i]`` keeps
    the original label of part ``i`` for reporting.
    """

    ground: GroundSet
    labels: np.ndarray
    names: tuple = field(default=())

    def __post_init__(self):
        labels = _frozen(self.labels)
        object.__setattr__(self, "labels", labels)
        if labels.shape != (len(self.ground),):
            raise DataError("one label per ground-set element is required")
        if len(labels) == 0:
            raise DataError("a partition needs at least one element")
        k = int(labels.max()) + 1
        if labels.min() < 0 or len(np.unique(labels)) != k:
            raise DataError("part indices must be dense 0..k-1 without empty parts")
        names = tuple(self.names) if self.names else tuple(str(i) for i in range(k))
        if len(names) != k:
            raise DataError(f"expected {k} part names, got {len(names)}")
        object.__setattr__(self, "names", names)

    @property
    def k(self) -> int:
        return len(self.names)

    @cached_property
    def part_weights(self) -> np.ndarray:
        return _frozen(_weighted_bincount(self.labels, self.ground.weights, self.k))

    def parts(self) -> list[list]:
        """Element lists per part, in ground-set order."""
        out: list[list] = [[] for _ in range(self.k)]
        for e, lab in zip(self.ground.elements, self.labels):
            out[lab].append(e)
        return out

    def label_of(self, element) -> str:
        return self.names[self.labels[self.ground.index[element]]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (self.ground == other.ground and self.names == other.names
                and np.array_equal(self.labels, other.labels))

    __hash__ = object.__hash__


def _weighted_bincount(idx: np.ndarray, weights: np.ndarray, size: int) -> np.ndarray:
    # bincount with weights goes through float64; stay in integers.
    if (weights == 1).all():
        return np.bincount(idx, minlength=size).astype(np.int64)
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, idx, weights)
    return out


def build_partition(ground: GroundSet, assignment: Mapping) -> Partition:
    """Build a partition from an ``element -> label`` mapping.

    Labels are re-indexed densely in order of first appearance along the
    ground set; the original labels become the part names.
    """
    unknown = [e for e in assignment if e not in ground.index]
    if unknown:
        raise DataError(f"unknown element in assignment: {unknown[0]!r}")
    dense: dict = {}
    labels = np.empty(len(ground), dtype=np.int64)
    for pos, e in enumerate(ground.elements):
        try:
            lab = assignment[e]
        except KeyError:
            raise DataError(f"element {e!r} has no label") from None
        labels[pos] = dense.setdefault(lab, len(dense))
    return Partition(ground, labels, tuple(str(lab) for lab in dense))


def partition_from_labels(labels: Sequence, weights=None, elements=None) -> Partition:
    """Convenience constructor from a plain label sequence (element ``i`` gets ``labels[i]``)."""
    if elements is None:
        elements = range(len(labels))
    ground = GroundSet.of(elements, weights)
    return build_partition(ground, dict(zip(ground.elements, labels)))


def _restrict(p: Partition, ground: GroundSet) -> Partition:
    pos = np.fromiter((p.ground.index[e] for e in ground.elements), dtype=np.int64,
                      count=len(ground))
    old = p.labels[pos]
    kept, dense = np.unique(old, return_inverse=True)
    # np.unique sorts; keep the original relative order of surviving parts
    return Partition(ground, dense, tuple(p.names[i] for i in kept))


def intersect_ground(pa: Partition, pb: Partition) -> tuple[Partition, Partition]:
    """Restrict two partitions of different sets to their common elements.

    Parts that lose all their elements are dropped and the remaining part
    indices are re-densified. Element weights must agree on the common set.
    """
    if pa.ground == pb.ground:
        return pa, pb
    common = [e for e in pa.ground.elements if e in pb.ground.index]
    if not common:
        raise DataError("empty intersection of the two ground sets")
    wa = pa.ground.weights[[pa.ground.index[e] for e in common]]
    wb = pb.ground.weights[[pb.ground.index[e] for e in common]]
    if not np.array_equal(wa, wb):
        raise DataError("element weights differ between the two inputs")
    ground = GroundSet(tuple(common), wa)
    return _restrict(pa, ground), _restrict(pb, ground)


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Intersection weights ``n[i, j] = |P_i ∩ P'_j|`` of two partitions.

    Column ``j`` is the distribution of ``P'_j`` over the parts of ``P``.
    """

    n: np.ndarray
    row_names: tuple = ()
    col_names: tuple = ()

    def __post_init__(self):
        n = _frozen(self.n)
        if n.ndim != 2 or 0 in n.shape:
            raise DataError("contingency table must be a nonempty 2-d array")
        if (n < 0).any():
            raise DataError("contingency entries must be nonnegative")
        object.__setattr__(self, "n", n)
        rows = tuple(self.row_names) or tuple(f"P{i + 1}" for i in range(n.shape[0]))
        cols = tuple(self.col_names) or tuple(f"P{j + 1}'" for j in range(n.shape[1]))
        if len(rows) != n.shape[0] or len(cols) != n.shape[1]:
            raise DataError("label count does not match table shape")
        object.__setattr__(self, "row_names", rows)
        object.__setattr__(self, "col_names", cols)

    @cached_property
    def row_sums(self) -> np.ndarray:
        return _frozen(self.n.sum(axis=1))

    @cached_property
    def col_sums(self) -> np.ndarray:
        return _frozen(self.n.sum(axis=0))

    @property
    def total(self) -> int:
        return int(self.n.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.n.shape

    def overlap(self, s) -> np.ndarray:
        """``|U_S ∩ P'_j|`` for every column ``j``."""
        return self.n[as_mask(s, self.n.shape[0])].sum(axis=0)

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable(self.n.T, self.col_names, self.row_names)

    @property
    def T(self) -> "ContingencyTable":
        return self.transpose()


def build_contingency(pa: Partition, pb: Partition) -> ContingencyTable:
    """Contingency table of two partitions of the same ground set, in one pass over V."""
    if not (pa.ground is pb.ground or pa.ground == pb.ground):
        raise DataError("partitions are defined on different ground sets")
    flat = _weighted_bincount(pa.labels * pb.k + pb.labels, pa.ground.weights, pa.k * pb.k)
    return ContingencyTable(flat.reshape(pa.k, pb.k), pa.names, pb.names)


def as_mask(s, k: int) -> np.ndarray:
    """Boolean mask of length ``k`` from a mask, a :class:`PartSet` or an iterable of indices."""
    if isinstance(s, PartSet):
        s = s.mask
    if isinstance(s, np.ndarray) and s.dtype == bool:
        if s.shape != (k,):
            raise IndexError(f"mask of length {s.shape} for {k} parts")
        return s
    mask = np.zeros(k, dtype=bool)
    idx = np.fromiter(s, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= k):
        raise IndexError(f"part index out of range 0..{k - 1}")
    mask[idx] = True
    return mask


class PartSet:
    """A subset of the parts of one partition.

    Stored as a boolean mask. When created through a table (``axis=0`` for
    parts of P, ``axis=1`` for parts of P') the union weight and overlap
    vector are cached on first use.
    """

    __slots__ = ("mask", "_table", "_axis", "_overlap")

    def __init__(self, mask, k: int | None = None, *, table: ContingencyTable | None = None,
                 axis: int = 0):
        if k is None:
            if table is None:
                mask = np.asarray(mask, dtype=bool)
                k = len(mask)
            else:
                k = table.shape[axis]
        m = as_mask(mask, k).copy()
        m.flags.writeable = False
        self.mask = m
        self._table = table
        self._axis = axis
        self._overlap = None

    @classmethod
    def from_indices(cls, indices: Iterable[int], k: int) -> "PartSet":
        return cls(list(indices), k)

    @property
    def k(self) -> int:
        return len(self.mask)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    @property
    def overlap(self) -> np.ndarray:
        """Intersection weights of ``U_S`` with every part of the other partition."""
        if self._table is None:
            raise ValueError("PartSet is not attached to a contingency table")
        if self._overlap is None:
            n = self._table.n if self._axis == 0 else self._table.n.T
            ov = n[self.mask].sum(axis=0)
            ov.flags.writeable = False
            self._overlap = ov
        return self._overlap

    @property
    def weight(self) -> int:
        """Total weight of ``U_S``."""
        if self._table is None:
            raise ValueError("PartSet is not attached to a contingency table")
        sums = self._table.row_sums if self._axis == 0 else self._table.col_sums
        return int(sums[self.mask].sum())

    def complement(self) -> "PartSet":
        return PartSet(~self.mask, table=self._table, axis=self._axis)

    def is_trivial(self) -> bool:
        return not self.mask.any() or self.mask.all()

    def __or__(self, other) -> "PartSet":
        return PartSet(self.mask | as_mask(other, self.k), table=self._table, axis=self._axis)

    def __and__(self, other) -> "PartSet":
        return PartSet(self.mask & as_mask(other, self.k), table=self._table, axis=self._axis)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, i) -> bool:
        return 0 <= i < self.k and bool(self.mask[i])

    def __eq__(self, other) -> bool:
        if isinstance(other, PartSet):
            return np.array_equal(self.mask, other.mask)
        if isinstance(other, (set, frozenset)):
            return set(self.indices) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.k, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"PartSet({set(self.indices) or '{}'}, k={self.k})"
