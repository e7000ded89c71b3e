import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clozedep import (
    DistanceMatrix,
    Partition,
    WeightAssignment,
    distance_matrix,
    neighborhood_weights,
    partition_clusters,
    partition_weights,
    threshold_adjacency,
    weight_summary,
)
from conftest import columns_matrix, make_matrix, random_matrix
import oracles


def dm_from_counts(counts, m):
    counts = np.asarray(counts)
    ids = tuple(f"i{j + 1}" for j in range(counts.shape[0]))
    return DistanceMatrix(counts=counts, m=m, item_ids=ids)


# three items with d(1,2)=0.1, d(1,3)=0.2, d(2,3)=0.4 on an m=10 grid
TRIAD = dm_from_counts([[0, 1, 2], [1, 0, 4], [2, 4, 0]], m=10)


class TestThresholdAdjacency:
    def test_strictness_on_grid_points(self):
        # threshold exactly at a grid value excludes that distance
        adj = threshold_adjacency(TRIAD, 0.1)
        assert not adj.any()
        # half a grid step above admits it
        adj = threshold_adjacency(TRIAD, 0.15)
        assert adj[0, 1] and adj[1, 0]
        assert adj.sum() == 2

    def test_zero_threshold_admits_nothing(self):
        m = columns_matrix((1, 0, 1), (1, 0, 1))  # identical columns, d = 0
        assert not threshold_adjacency(distance_matrix(m), 0.0).any()

    def test_negative_threshold_rejected(self):
        with pytest.raises(ValueError, match=">= 0"):
            threshold_adjacency(TRIAD, -0.1)

    def test_diagonal_never_set(self):
        assert not np.diagonal(threshold_adjacency(TRIAD, 2.0)).any()


class TestNeighborhoodWeights:
    def test_zero_threshold_all_singletons(self):
        wa = neighborhood_weights(TRIAD, 0.0)
        assert wa.k.tolist() == [1, 1, 1]
        assert wa.w.tolist() == [1.0, 1.0, 1.0]
        assert wa.sum_w == 3.0
        assert wa.singleton_count == 3

    def test_triad_at_quarter(self):
        wa = neighborhood_weights(TRIAD, 0.25)
        assert wa.k.tolist() == [3, 2, 2]
        assert wa.w.tolist() == [1 / 3, 1 / 2, 1 / 2]
        assert wa.sum_w == pytest.approx(4 / 3, rel=0, abs=1e-15)
        assert wa.singleton_count == 0

    def test_identical_pair_small_threshold(self):
        dm = distance_matrix(columns_matrix((1, 0, 1, 1), (1, 0, 1, 1)))
        wa = neighborhood_weights(dm, 0.05)
        assert wa.k.tolist() == [2, 2]
        assert wa.w.tolist() == [0.5, 0.5]
        assert wa.sum_w == 1.0

    @given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.integers(2, 7))
    def test_bounds(self, seed, m, n):
        dm = distance_matrix(random_matrix(seed, m, n))
        for a in (0.0, 0.3, 0.7, 1.5):
            wa = neighborhood_weights(dm, a)
            assert ((wa.k >= 1) & (wa.k <= n)).all()
            assert ((wa.w > 0) & (wa.w <= 1)).all()
            assert ((wa.w == 1.0) == (wa.k == 1)).all()
            assert 1.0 - 1e-9 <= wa.sum_w <= n


class TestPartition:
    def test_triad_components(self):
        p = partition_clusters(TRIAD, 0.25)
        assert p.clusters == ((0, 1, 2),)
        assert p.cluster_of.tolist() == [0, 0, 0]

    def test_triad_no_edges(self):
        p = partition_clusters(TRIAD, 0.05)
        assert p.clusters == ((0,), (1,), (2,))

    def test_two_identical_blocks(self):
        m = columns_matrix(
            (1, 0, 1, 0, 1), (1, 0, 1, 0, 1), (0, 1, 1, 0, 0), (0, 1, 1, 0, 0)
        )
        dm = distance_matrix(m)
        min_cross = 3  # mismatches between the two distinct columns
        assert dm.counts[0, 2] == min_cross
        for a in (0.05, 0.3, min_cross / 5):
            p = partition_clusters(dm, a)
            assert p.clusters == ((0, 1), (2, 3))

    def test_cluster_ids_by_smallest_member(self):
        # connect items 0 and 3; 1 and 2 stay single
        counts = np.full((4, 4), 5)
        np.fill_diagonal(counts, 0)
        counts[0, 3] = counts[3, 0] = 1
        p = partition_clusters(dm_from_counts(counts, 10), 0.2)
        assert p.clusters == ((0, 3), (1,), (2,))
        assert p.cluster_of.tolist() == [0, 1, 2, 0]

    def test_weights_from_partition(self):
        p = partition_clusters(TRIAD, 0.25)
        wa = partition_weights(p)
        assert wa.w.tolist() == [1 / 3, 1 / 3, 1 / 3]
        assert wa.sum_w == 1.0
        singles = partition_weights(partition_clusters(TRIAD, 0.05))
        assert singles.w.tolist() == [1.0, 1.0, 1.0]
        assert singles.sum_w == 3.0

    def test_duplicate_blocks_quarter_weights(self):
        cols = []
        rng = np.random.default_rng(11)
        for _ in range(5):
            base = rng.integers(0, 2, 12)
            cols.extend([base] * 4)
        dm = distance_matrix(make_matrix(np.column_stack(cols)))
        wa = partition_weights(partition_clusters(dm, 1e-6))
        assert (wa.w == 0.25).all()
        assert wa.sum_w == 5.0

    def test_per_cluster_sums_exactly_one(self):
        for seed in range(20):
            dm = distance_matrix(random_matrix(seed, 6, 8))
            for a in (0.2, 0.4, 0.6):
                p = partition_clusters(dm, a)
                wa = partition_weights(p)
                for members in p.clusters:
                    assert math.fsum(wa.w[list(members)].tolist()) == 1.0
                assert wa.sum_w == float(len(p.clusters))

    def test_validation(self):
        with pytest.raises(ValueError, match="partition"):
            Partition(
                cluster_of=np.array([0, 0]), clusters=((0,),), a_crit=0.1
            )
        with pytest.raises(ValueError, match="smallest member"):
            Partition(
                cluster_of=np.array([1, 0]), clusters=((1,), (0,)), a_crit=0.1
            )
        with pytest.raises(ValueError, match="disagrees"):
            Partition(
                cluster_of=np.array([0, 0]), clusters=((0,), (1,)), a_crit=0.1
            )


class TestModeAgreement:
    def test_clique_union_matches_partition(self):
        # disjoint identical blocks form cliques; the two semantics coincide
        cols = [
            (1, 0, 1, 0, 1, 1),
            (1, 0, 1, 0, 1, 1),
            (0, 1, 0, 1, 1, 0),
            (0, 1, 0, 1, 1, 0),
            (0, 1, 0, 1, 1, 0),
        ]
        dm = distance_matrix(columns_matrix(*cols))
        nb = neighborhood_weights(dm, 0.05)
        pt = partition_weights(partition_clusters(dm, 0.05))
        assert nb.k.tolist() == pt.k.tolist()
        assert nb.w.tolist() == pt.w.tolist()
        assert nb.singleton_count == pt.singleton_count == 0
        assert math.fsum(nb.w[:2].tolist()) == 1.0
        assert math.fsum(nb.w[2:].tolist()) == 1.0

    def test_below_min_positive_distance_all_singletons(self):
        for seed in range(30):
            matrix = random_matrix(seed, 9, 6)
            dm = distance_matrix(matrix)
            off = dm.counts[np.triu_indices(dm.n, k=1)]
            if (off == 0).any():
                continue  # duplicate columns: zero distances defeat this
            a = off.min() / dm.m
            nb = neighborhood_weights(dm, a)
            pt = partition_weights(partition_clusters(dm, a))
            assert (nb.k == 1).all() and (pt.k == 1).all()
            assert nb.sum_w == pt.sum_w == float(dm.n)

    def test_constant_columns_aggregate_and_lose_weight(self):
        rng = np.random.default_rng(4)
        varied = [rng.integers(0, 2, 20) for _ in range(4)]
        constant = [np.ones(20, dtype=int)] * 3
        dm = distance_matrix(make_matrix(np.column_stack(varied + constant)))
        wa = neighborhood_weights(dm, 0.15)
        assert (wa.w[4:] <= 1 / 3).all()


class TestMonotonicity:
    @given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.integers(2, 8))
    def test_threshold_monotonicity(self, seed, m, n):
        dm = distance_matrix(random_matrix(seed, m, n))
        rng = np.random.default_rng(seed)
        a1, a2 = sorted(rng.uniform(0, 1.2, size=2))
        wa1, wa2 = neighborhood_weights(dm, a1), neighborhood_weights(dm, a2)
        assert (wa1.k <= wa2.k).all()
        assert (wa1.w >= wa2.w).all()
        assert wa1.sum_w >= wa2.sum_w


class TestOracleAgreement:
    def test_against_definition_level_oracle(self):
        checked = 0
        for seed in range(60):
            rng = np.random.default_rng(seed)
            m = int(rng.integers(2, 9))
            n = int(rng.integers(2, 8))
            matrix = random_matrix(seed + 10_000, m, n)
            dm = distance_matrix(matrix)
            d = oracles.distance_table(matrix.cells.tolist())
            uniques = sorted(set(int(c) for c in dm.counts[np.triu_indices(n, 1)]))
            thresholds = [c / m for c in uniques] + [uniques[-1] / m + 1 / (2 * m)]
            for a in thresholds:
                ok, ow, osum, osing = oracles.neighborhood(d, a)
                wa = neighborhood_weights(dm, a)
                assert wa.k.tolist() == ok
                assert wa.w.tolist() == ow
                assert wa.sum_w == osum
                assert wa.singleton_count == osing
                assert partition_clusters(dm, a).clusters == tuple(
                    oracles.components(d, a)
                )
                checked += 1
        assert checked >= 200


class TestWeightAssignment:
    def test_validation(self):
        with pytest.raises(ValueError, match="w = 1/k"):
            WeightAssignment(
                a_crit=0.1, mode="neighborhood",
                k=np.array([2, 2]), w=np.array([0.5, 0.4]),
                sum_w=0.9, singleton_count=0,
            )
        with pytest.raises(ValueError, match="singleton"):
            WeightAssignment(
                a_crit=0.1, mode="neighborhood",
                k=np.array([1, 2]), w=np.array([1.0, 0.5]),
                sum_w=1.5, singleton_count=0,
            )
        with pytest.raises(ValueError, match="sum_w"):
            WeightAssignment(
                a_crit=0.1, mode="neighborhood",
                k=np.array([1, 1]), w=np.array([1.0, 1.0]),
                sum_w=5.0, singleton_count=2,
            )

    def test_arrays_read_only(self):
        wa = neighborhood_weights(TRIAD, 0.25)
        with pytest.raises(ValueError):
            wa.w[0] = 0.9


class TestWeightSummary:
    def test_reported_scale(self):
        # 145 items compressing to a total weight of 44.4 average to 3.26
        # items per cluster; sum_w is set directly to probe the arithmetic
        wa = WeightAssignment(
            a_crit=0.25, mode="neighborhood",
            k=np.array([1] * 145), w=np.array([1.0] * 145),
            sum_w=44.4, singleton_count=145,
        )
        summary = weight_summary(wa, 145)
        assert summary.avg_items_per_cluster == pytest.approx(145 / 44.4, rel=1e-15)
        assert summary.avg_items_per_cluster == pytest.approx(3.2658, abs=5e-4)

    def test_average_items_per_cluster(self):
        summary = weight_summary(neighborhood_weights(TRIAD, 0.25), TRIAD.n)
        assert summary.sum_w == pytest.approx(4 / 3, abs=1e-15)
        assert summary.avg_items_per_cluster == pytest.approx(2.25, rel=1e-12)
        assert summary.singleton_count == 0

    def test_all_singletons(self):
        summary = weight_summary(neighborhood_weights(TRIAD, 0.0), TRIAD.n)
        assert summary.avg_items_per_cluster == 1.0
        assert summary.singleton_count == 3
