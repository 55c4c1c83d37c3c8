import numpy as np
import pytest

from lleproj.dataset import PointCloud
from lleproj.neighbors import knn


def brute_force_knn(points, k):
    """Full sort of all pairwise distances with (distance, index) ordering."""
    n = points.shape[1]
    out = []
    for i in range(n):
        dist = [(float(np.sum((points[:, i] - points[:, j]) ** 2)), j) for j in range(n) if j != i]
        dist.sort()
        out.append([j for _, j in dist[:k]])
    return np.array(out)


def test_collinear_example():
    graph = knn(PointCloud(np.array([[0.0, 1.0, 3.0]])), 1)
    assert graph.indices[:, 0].tolist() == [1, 0, 1]


def test_k_equals_n_minus_one(rng):
    pts = rng.normal(size=(2, 7))
    graph = knn(PointCloud(pts), 6)
    for i, row in enumerate(graph.indices):
        assert sorted(row) == [j for j in range(7) if j != i]


def test_matches_brute_force(rng):
    pts = rng.normal(size=(3, 50))
    assert np.array_equal(knn(PointCloud(pts), 5).indices, brute_force_knn(pts, 5))


def test_matches_brute_force_many_instances(rng):
    for trial in range(50):
        n = int(rng.integers(2, 201))
        dim = int(rng.integers(1, 6))
        k = int(rng.integers(1, n))
        pts = rng.normal(size=(dim, n))
        if trial % 5 == 0:
            # duplicates and lattice points to force ties
            pts = np.round(pts * 2) / 2
        graph = knn(PointCloud(pts), k)
        assert np.array_equal(graph.indices, brute_force_knn(pts, k)), (n, dim, k)


def test_row_invariants(small_roll):
    graph = knn(small_roll, 12)
    assert graph.k == 12
    for i, row in enumerate(graph.indices):
        assert i not in row
        assert len(set(row.tolist())) == 12
        assert row.min() >= 0 and row.max() < small_roll.n


def test_duplicate_points_break_ties_by_index():
    pts = np.zeros((2, 4))
    graph = knn(PointCloud(pts), 2)
    assert graph.indices.tolist() == [[1, 2], [0, 2], [0, 1], [0, 1]]


def test_deterministic(small_roll):
    assert np.array_equal(knn(small_roll, 8).indices, knn(small_roll, 8).indices)


@pytest.mark.parametrize("k", [0, 3, 10])
def test_invalid_k(k):
    with pytest.raises(ValueError):
        knn(PointCloud(np.zeros((1, 3))), k)
