"""Reference and random instances."""

from __future__ import annotations

import numpy as np

from .partition import ContingencyTable, GroundSet, Partition, build_contingency, build_partition

FIG5_TABLE = ((4, 0), (0, 4), (1, 1))


def fig5_partitions() -> tuple[Partition, Partition]:
    """Ten unit-weight elements: P = {P1, P2, P3} with sizes 4, 4, 2 and
    P' = {P1', P2'} with sizes 5, 5, overlapping as ``FIG5_TABLE``."""
    elements = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4", "c1", "c2"]
    ground = GroundSet.of(elements)
    p = {e: "P" + {"a": "1", "b": "2", "c": "3"}[e[0]] for e in elements}
    q = {e: ("P1'" if e[0] == "a" or e == "c1" else "P2'") for e in elements}
    return build_partition(ground, p), build_partition(ground, q)


def fig5_table() -> ContingencyTable:
    return build_contingency(*fig5_partitions())


def random_partitions(rng: np.random.Generator, n_elements: int, k: int, k_prime: int,
                      max_weight: int = 1) -> tuple[Partition, Partition]:
    """Two random partitions of ``n_elements`` with exactly ``k`` and ``k_prime`` parts."""
    if n_elements < max(k, k_prime):
        raise ValueError("not enough elements for the requested part counts")

    def labels(count):
        lab = rng.integers(0, count, size=n_elements)
        lab[rng.permutation(n_elements)[:count]] = np.arange(count)
        return lab

    ground = GroundSet.of(range(n_elements), rng.integers(1, max_weight + 1, size=n_elements))
    pa = build_partition(ground, dict(enumerate(labels(k))))
    pb = build_partition(ground, dict(enumerate(labels(k_prime))))
    return pa, pb


def random_table(rng: np.random.Generator, max_parts: int = 10, max_parts_prime: int = 8,
                 max_elements: int = 60, max_weight: int = 5,
                 min_parts: int = 2, min_parts_prime: int = 2) -> ContingencyTable:
    """Contingency table of two random weighted partitions."""
    k = int(rng.integers(min_parts, max_parts + 1))
    kp = int(rng.integers(min_parts_prime, max_parts_prime + 1))
    n = int(rng.integers(max(k, kp), max_elements + 1))
    return build_contingency(*random_partitions(rng, n, k, kp, max_weight))


def planted_partitions(rng: np.random.Generator, n_elements: int, k: int,
                       noise: float = 0.05) -> tuple[np.ndarray, np.ndarray]:
    """Label arrays of two near-identical partitions into ``k`` parts.

    The second one copies the first and relabels a ``noise`` fraction of the
    elements uniformly at random.
    """
    a = rng.integers(0, k, size=n_elements)
    a[:k] = np.arange(k)
    b = a.copy()
    flip = rng.random(n_elements) < noise
    flip[:k] = False
    b[flip] = rng.integers(0, k, size=int(flip.sum()))
    return a, b
