"""Tests for the fixed-size clustering loop and its pieces."""

import numpy as np
import pytest

from fixedkmeans import (
    RunConfig,
    assignment_step,
    balanced_sizes,
    build_layout,
    cluster,
    cluster_multi_restart,
    compute_mse,
    compute_weights,
    update_step,
)
from fixedkmeans import oracle
from fixedkmeans.datasets import gaussian_mixture

from helpers import assert_balanced, random_sizes


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.seed == 0
        assert config.restarts == 10
        assert config.max_iter == 10_000
        assert config.mds_tol == 1e-9

    @pytest.mark.parametrize("kwargs", [
        {"seed": -1},
        {"seed": 2**64},
        {"restarts": 0},
        {"max_iter": 0},
        {"mds_tol": 0.0},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            RunConfig(**kwargs)


class TestSlotLayout:
    def test_party_table_sizes(self):
        layout = build_layout([4, 4, 5, 6, 3])
        assert layout.cumulative.tolist() == [4, 8, 13, 19, 22]
        assert layout.slot_to_cluster[4] == 1   # fifth slot belongs to the second cluster
        assert layout.slot_to_cluster[21] == 4  # last slot belongs to the last cluster

    def test_single_cluster(self):
        layout = build_layout([6])
        assert layout.slot_to_cluster.tolist() == [0] * 6

    def test_singleton_clusters(self):
        layout = build_layout([1] * 5)
        assert layout.slot_to_cluster.tolist() == [0, 1, 2, 3, 4]

    def test_counts_match_sizes(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            sizes = random_sizes(rng, int(rng.integers(1, 40)))
            layout = build_layout(sizes)
            assert np.bincount(layout.slot_to_cluster, minlength=len(sizes)).tolist() == sizes
            assert (np.diff(layout.cumulative) > 0).all()
            assert layout.cumulative[-1] == sum(sizes)

    def test_rejects_nonpositive_size(self):
        with pytest.raises(ValueError, match="sizes\\[1\\]"):
            build_layout([2, 0, 1])

    def test_rejects_fractional_size(self):
        with pytest.raises(ValueError, match="integers"):
            build_layout([2.5, 1.5])


class TestComputeMse:
    def test_zero_when_points_sit_on_centroids(self):
        points = np.array([[1.0, 2.0], [3.0, 4.0]])
        assert compute_mse(points, [0, 1], points.copy()) == 0.0

    def test_symmetric_pair_about_mean(self):
        points = np.array([[0.0], [2.0]])
        assert compute_mse(points, [0, 0], np.array([[1.0]])) == pytest.approx(1.0)

    def test_matches_double_loop(self):
        rng = np.random.default_rng(5)
        points = rng.standard_normal((20, 2))
        labels = rng.permutation(np.repeat(np.arange(4), 5))
        centroids = rng.standard_normal((4, 2))
        expected = 0.0
        for i in range(20):
            for axis in range(2):
                expected += (points[i, axis] - centroids[labels[i], axis]) ** 2
        expected /= 20
        assert compute_mse(points, labels, centroids) == pytest.approx(expected, rel=1e-12)

    def test_rejects_out_of_range_label(self):
        points = np.zeros((3, 2))
        with pytest.raises(ValueError, match="cluster 5"):
            compute_mse(points, [0, 1, 5], np.zeros((2, 2)))


class TestComputeWeights:
    def test_zero_for_coincident_point(self):
        points = np.array([[1.0, 1.0], [4.0, 0.0]])
        centroids = np.array([[1.0, 1.0], [0.0, 0.0]])
        weights = compute_weights(points, centroids, build_layout([1, 1]))
        assert weights[0, 0] == 0.0

    def test_single_cluster_rows_identical(self):
        rng = np.random.default_rng(6)
        points = rng.standard_normal((5, 3))
        centroids = rng.standard_normal((1, 3))
        weights = compute_weights(points, centroids, build_layout([5]))
        assert (weights == weights[0]).all()

    def test_matches_scalar_loop(self):
        rng = np.random.default_rng(7)
        points = rng.standard_normal((5, 2))
        centroids = np.array([[0.5, -1.0], [2.0, 3.0]])
        layout = build_layout([2, 3])
        weights = compute_weights(points, centroids, layout)
        for a in range(5):
            for i in range(5):
                c = centroids[0] if a < 2 else centroids[1]
                expected = (points[i][0] - c[0]) ** 2 + (points[i][1] - c[1]) ** 2
                assert weights[a, i] == pytest.approx(expected, rel=1e-12)


class TestAssignmentStep:
    def test_separated_pairs(self):
        points = np.array([[0.0, 0.0], [0.2, 0.0], [10.0, 0.0], [10.2, 0.0]])
        centroids = np.array([[0.1, 0.0], [10.1, 0.0]])
        step = assignment_step(points, centroids, build_layout([2, 2]))
        assert step.labels.tolist() == [0, 0, 1, 1]
        assert step.cost == pytest.approx(4 * 0.1**2, abs=1e-12)

    def test_matches_partition_enumeration(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            sizes = random_sizes(rng, n, k_max=4)
            points = rng.standard_normal((n, 2))
            centroids = rng.standard_normal((len(sizes), 2))
            step = assignment_step(points, centroids, build_layout(sizes))
            best = oracle.best_fixed_centroid_assignment(points, centroids, sizes)
            assert step.cost == pytest.approx(best.cost, abs=1e-9)

    def test_singleton_layout_with_matching_centroids(self):
        rng = np.random.default_rng(9)
        points = rng.standard_normal((6, 2))
        order = rng.permutation(6)
        step = assignment_step(points, points[order], build_layout([1] * 6))
        assert step.cost == pytest.approx(0.0, abs=1e-12)
        # zero cost is only achievable by sending each point to its own location
        assert step.labels.tolist() == np.argsort(order).tolist()

    def test_bijection_and_consistency(self):
        rng = np.random.default_rng(10)
        points = rng.standard_normal((9, 2))
        sizes = [2, 3, 4]
        layout = build_layout(sizes)
        step = assignment_step(points, rng.standard_normal((3, 2)), layout)
        assert sorted(step.slot_to_point.tolist()) == list(range(9))
        assert (step.labels[step.slot_to_point] == layout.slot_to_cluster).all()
        assert_balanced(step.labels, sizes)


class TestUpdateStep:
    def test_singleton_cluster_centroid_is_point(self):
        points = np.array([[3.0, 4.0], [0.0, 0.0]])
        step = assignment_step(points, points.copy(), build_layout([1, 1]))
        centroids = update_step(points, step)
        assert centroids == pytest.approx(points)

    def test_midpoint(self):
        points = np.array([[0.0, 0.0], [2.0, 0.0]])
        step = assignment_step(points, np.array([[1.0, 0.0]]), build_layout([2]))
        centroids = update_step(points, step)
        assert centroids == pytest.approx(np.array([[1.0, 0.0]]))

    def test_matches_accumulation_oracle(self):
        rng = np.random.default_rng(11)
        points = rng.standard_normal((12, 3))
        sizes = [3, 4, 5]
        step = assignment_step(points, rng.standard_normal((3, 3)), build_layout(sizes))
        centroids = update_step(points, step)
        for j, size in enumerate(sizes):
            total = np.zeros(3)
            for i in range(12):
                if step.labels[i] == j:
                    total += points[i]
            assert centroids[j] == pytest.approx(total / size, abs=1e-12)


class TestCluster:
    def test_corner_square_reaches_enumerated_best(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        result = cluster_multi_restart(points, [2, 2], RunConfig(seed=0, restarts=10))
        best = oracle.best_balanced_partition(points, [2, 2])
        assert result.mse == pytest.approx(best.mse, rel=1e-9)
        assert result.mse == pytest.approx(0.25)
        assert_balanced(result.labels, [2, 2])

    def test_single_cluster_is_global_mean(self):
        rng = np.random.default_rng(12)
        points = rng.standard_normal((8, 2))
        result = cluster(points, [8], RunConfig(seed=1, restarts=1))
        assert result.centroids[0] == pytest.approx(points.mean(axis=0))
        expected_mse = ((points - points.mean(axis=0)) ** 2).sum() / 8
        assert result.mse == pytest.approx(expected_mse, rel=1e-12)
        assert result.iterations == 1
        assert result.converged

    def test_singletons_reach_zero(self):
        rng = np.random.default_rng(13)
        points = rng.standard_normal((5, 2))
        result = cluster_multi_restart(points, [1] * 5, RunConfig(seed=2, restarts=20))
        assert result.mse == pytest.approx(0.0, abs=1e-12)
        assert_balanced(result.labels, [1] * 5)

    def test_rejects_size_sum_mismatch(self):
        with pytest.raises(ValueError, match="sizes sum 3 != n 4"):
            cluster(np.zeros((4, 2)), [2, 1])

    def test_balance_always_exact(self):
        rng = np.random.default_rng(14)
        for _ in range(15):
            n = int(rng.integers(3, 30))
            sizes = random_sizes(rng, n, k_max=5)
            points = rng.standard_normal((n, 2)) * 3
            result = cluster(points, sizes, RunConfig(seed=int(rng.integers(100)), restarts=1))
            assert_balanced(result.labels, sizes)

    def test_mse_history_non_increasing(self):
        rng = np.random.default_rng(15)
        for trial in range(10):
            points = gaussian_mixture(60, dim=2, components=3, seed=trial, spread=8.0)
            sizes = random_sizes(rng, 60, k=3)
            result = cluster(points, sizes, RunConfig(seed=trial, restarts=1))
            history = np.array(result.mse_history)
            assert (np.diff(history) <= 1e-12).all()
            assert result.converged

    def test_max_iter_cap_reported(self):
        points = gaussian_mixture(30, dim=2, components=3, seed=3)
        result = cluster(points, [10, 10, 10], RunConfig(seed=0, restarts=1, max_iter=1))
        assert result.iterations == 1
        assert not result.converged

    def test_deterministic_for_seed(self):
        points = gaussian_mixture(40, dim=2, components=4, seed=4)
        config = RunConfig(seed=9, restarts=1)
        first = cluster(points, [10, 10, 10, 10], config)
        second = cluster(points, [10, 10, 10, 10], config)
        assert first.labels.tolist() == second.labels.tolist()
        assert first.mse == second.mse
        assert first.centroids == pytest.approx(second.centroids)

    def test_init_indices_override(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [10.0, 0.0], [11.0, 0.0]])
        result = cluster(points, [2, 2], init_indices=[0, 2])
        assert result.labels.tolist() == [0, 0, 1, 1]

    def test_init_indices_validated(self):
        points = np.zeros((4, 2))
        with pytest.raises(ValueError, match="distinct"):
            cluster(points, [2, 2], init_indices=[1, 1])
        with pytest.raises(ValueError, match="range"):
            cluster(points, [2, 2], init_indices=[0, 7])


class TestMultiRestart:
    def test_single_restart_matches_cluster(self):
        points = gaussian_mixture(24, dim=2, components=3, seed=5)
        config = RunConfig(seed=3, restarts=1)
        single = cluster(points, [8, 8, 8], config)
        multi = cluster_multi_restart(points, [8, 8, 8], config)
        assert multi.labels.tolist() == single.labels.tolist()
        assert multi.mse == single.mse
        assert multi.restarts_used == 1

    def test_best_mse_non_increasing_in_restarts(self):
        points = gaussian_mixture(20, dim=2, components=4, seed=6, spread=4.0)
        sizes = [5, 5, 5, 5]
        previous = np.inf
        for restarts in range(1, 7):
            result = cluster_multi_restart(points, sizes, RunConfig(seed=11, restarts=restarts))
            assert result.mse <= previous + 1e-15
            previous = result.mse

    def test_restart_determinism(self):
        points = gaussian_mixture(18, dim=3, components=3, seed=7)
        config = RunConfig(seed=21, restarts=6)
        first = cluster_multi_restart(points, [6, 6, 6], config)
        second = cluster_multi_restart(points, [6, 6, 6], config)
        assert first.labels.tolist() == second.labels.tolist()
        assert first.mse == second.mse


class TestBalancedSizes:
    def test_even_split(self):
        assert balanced_sizes(12, 4) == [3, 3, 3, 3]

    def test_remainder_spread(self):
        assert balanced_sizes(11, 4) == [3, 3, 3, 2]
        assert sum(balanced_sizes(23, 5)) == 23

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            balanced_sizes(3, 4)
        with pytest.raises(ValueError):
            balanced_sizes(3, 0)
