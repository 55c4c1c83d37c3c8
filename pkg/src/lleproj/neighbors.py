"""Fixed-k nearest-neighbour graph."""
from dataclasses import dataclass

import numpy as np

from . import _backend


@dataclass(frozen=True, eq=False)
class NeighborGraph:
    """Row ``i`` of ``indices`` lists the k nearest neighbours of point i,
    nearest first."""

    indices: np.ndarray

    @property
    def k(self):
        return self.indices.shape[1]

    @property
    def n(self):
        return self.indices.shape[0]


def knn(cloud, k):
    """Exact brute-force k nearest neighbours, excluding the point itself.

    Ties in distance go to the smaller index, so the result is fully
    deterministic even with duplicate points.
    """
    n = cloud.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= N-1 = {n - 1}, got k={k}")
    indices = np.asarray(_backend.knn_indices(cloud.samples(), int(k)), dtype=np.int64)
    indices.flags.writeable = False
    return NeighborGraph(indices)
