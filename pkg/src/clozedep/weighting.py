"""Cluster sizes and inverse-cluster-size weights from a distance threshold.

Two semantics are shipped, because non-transitive closeness admits two
readings of "cluster":

* ``neighborhood`` (default): item i's cluster size k_i is 1 (itself) plus
  the number of other items strictly closer than the threshold. Membership
  is per-item and non-transitive, so the total weight sum can be a
  non-integer.
* ``partition``: items are grouped into connected components of the
  strict-threshold graph. Per-component weights are 1/|component|, each
  component's weights sum to 1, and the weight total equals the component
  count exactly.

Threshold comparisons are done on integer mismatch counts against
``a_crit * m`` with a small guard, so grid values k/m never wobble on
their floating-point representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distance import DistanceMatrix

# Absolute slack when comparing integer mismatch counts against a_crit * m.
# Keeps "count < a_crit * m" stable when a_crit is (an FP image of) a grid
# point k/m: the product then sits within an ulp of an integer, far closer
# than the guard.
THRESHOLD_GUARD = 1e-9

NEIGHBORHOOD = "neighborhood"
PARTITION = "partition"
MODES = (NEIGHBORHOOD, PARTITION)


@dataclass(frozen=True, eq=False)
class WeightAssignment:
    """Per-item cluster sizes k and weights w = 1/k at one threshold."""

    a_crit: float
    mode: str
    k: np.ndarray
    w: np.ndarray
    sum_w: float
    singleton_count: int

    def __post_init__(self) -> None:
        k = np.asarray(self.k, dtype=np.int64)
        w = np.asarray(self.w, dtype=np.float64)
        n = k.size
        if w.size != n or n == 0:
            raise ValueError("k and w must be equal-length and non-empty")
        if (k < 1).any():
            raise ValueError("cluster sizes must be >= 1")
        if np.max(np.abs(w * k - 1.0)) > 1e-12:
            raise ValueError("weights must satisfy w = 1/k")
        if not 1.0 - 1e-9 <= self.sum_w <= n + 1e-9:
            raise ValueError(f"sum_w {self.sum_w} outside [1, n]")
        if self.singleton_count != int(np.count_nonzero(k == 1)):
            raise ValueError("singleton_count inconsistent with k")
        k.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return int(self.k.size)


@dataclass(frozen=True, eq=False)
class Partition:
    """Disjoint clusters covering all items; ids ordered by smallest member."""

    cluster_of: np.ndarray
    clusters: tuple[tuple[int, ...], ...]
    a_crit: float

    def __post_init__(self) -> None:
        cluster_of = np.asarray(self.cluster_of, dtype=np.int64)
        clusters = tuple(tuple(int(i) for i in c) for c in self.clusters)
        seen: list[int] = []
        for cid, members in enumerate(clusters):
            if not members:
                raise ValueError("empty cluster")
            for i in members:
                seen.append(i)
                if cluster_of[i] != cid:
                    raise ValueError("cluster_of disagrees with clusters")
        if sorted(seen) != list(range(cluster_of.size)):
            raise ValueError("clusters must partition all items")
        firsts = [min(c) for c in clusters]
        if firsts != sorted(firsts):
            raise ValueError("cluster ids must be ordered by smallest member")
        cluster_of.setflags(write=False)
        object.__setattr__(self, "cluster_of", cluster_of)
        object.__setattr__(self, "clusters", clusters)

    @property
    def n(self) -> int:
        return int(self.cluster_of.size)


def threshold_adjacency(dm: DistanceMatrix, a_crit: float) -> np.ndarray:
    """Boolean matrix of strict-threshold closeness, diagonal excluded.

    Entry (i, j) is True iff d[i][j] < a_crit, evaluated as
    ``counts[i][j] < a_crit * m - guard`` on the integer counts.
    """
    if a_crit < 0:
        raise ValueError(f"a_crit must be >= 0, got {a_crit}")
    adj = dm.counts < a_crit * dm.m - THRESHOLD_GUARD
    np.fill_diagonal(adj, False)
    return adj


def neighborhood_weights(dm: DistanceMatrix, a_crit: float) -> WeightAssignment:
    """Per-item neighborhood sizes and weights at a threshold.

    k_i counts the item itself plus every other item strictly within
    a_crit of it; w_i = 1/k_i. Neighborhoods of different items may
    overlap without coinciding (membership is not transitive).
    """
    adj = threshold_adjacency(dm, a_crit)
    k = 1 + adj.sum(axis=1, dtype=np.int64)
    w = 1.0 / k
    return WeightAssignment(
        a_crit=a_crit,
        mode=NEIGHBORHOOD,
        k=k,
        w=w,
        sum_w=math.fsum(w.tolist()),
        singleton_count=int(np.count_nonzero(k == 1)),
    )


class _UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:  # path compression
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru != rv:
            if rv < ru:  # keep the smaller index as root for determinism
                ru, rv = rv, ru
            self.parent[rv] = ru


def partition_clusters(dm: DistanceMatrix, a_crit: float) -> Partition:
    """Connected components of the strict-threshold graph.

    Items share a cluster iff they are joined by a chain of strictly
    sub-threshold distances. Cluster ids are assigned in order of each
    component's smallest member index.
    """
    adj = threshold_adjacency(dm, a_crit)
    n = dm.n
    uf = _UnionFind(n)
    for i, j in zip(*np.nonzero(np.triu(adj, k=1))):
        uf.union(int(i), int(j))

    members: dict[int, list[int]] = {}
    for i in range(n):
        members.setdefault(uf.find(i), []).append(i)
    clusters = tuple(
        tuple(members[root]) for root in sorted(members, key=lambda r: members[r][0])
    )
    cluster_of = np.empty(n, dtype=np.int64)
    for cid, group in enumerate(clusters):
        for i in group:
            cluster_of[i] = cid
    return Partition(cluster_of=cluster_of, clusters=clusters, a_crit=a_crit)


def partition_weights(partition: Partition) -> WeightAssignment:
    """Inverse-component-size weights; each cluster's weights sum to 1.

    sum_w equals the number of clusters exactly, by construction.
    """
    sizes = np.empty(partition.n, dtype=np.int64)
    for group in partition.clusters:
        for i in group:
            sizes[i] = len(group)
    w = 1.0 / sizes
    return WeightAssignment(
        a_crit=partition.a_crit,
        mode=PARTITION,
        k=sizes,
        w=w,
        sum_w=float(len(partition.clusters)),
        singleton_count=int(np.count_nonzero(sizes == 1)),
    )


@dataclass(frozen=True)
class WeightSummary:
    """Weight total, singleton count, and average items per cluster (n / sum_w)."""

    sum_w: float
    singleton_count: int
    avg_items_per_cluster: float


def weight_summary(wa: WeightAssignment, n_items: int) -> WeightSummary:
    """Summary statistics of a weight assignment over n_items items."""
    return WeightSummary(
        sum_w=wa.sum_w,
        singleton_count=wa.singleton_count,
        avg_items_per_cluster=n_items / wa.sum_w,
    )
