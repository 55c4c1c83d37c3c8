"""Barycentric reconstruction weights, exact or Tikhonov-regularized.

For a point x_i with neighbours x_{i_1}..x_{i_k} the weights minimise
``||x_i - sum_j w_j x_{i_j}||^2`` subject to ``sum_j w_j = 1``. With the
local Gram matrix ``C = Z^T Z`` (Z holding the neighbour differences) every
minimiser solves ``C w = lam 1, 1^T w = 1``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .errors import InfeasibleStationarityError

#: smallest eigenvalue <= SINGULAR_RTOL * trace(C) counts as singular
SINGULAR_RTOL = 1e-10
#: the ratio used for the regularized weights in the Swiss-roll experiments
DEFAULT_EPS_RATIO = 1e-3


@dataclass(frozen=True)
class WeightMode:
    """``kind`` is ``"exact"`` or ``"regularized"``; ``eps_ratio`` scales trace(C)."""

    kind: str = "exact"
    eps_ratio: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("exact", "regularized"):
            raise ValueError(f"unknown weight mode {self.kind!r}")
        if self.kind == "regularized":
            if self.eps_ratio is None or not self.eps_ratio > 0 or not np.isfinite(self.eps_ratio):
                raise ValueError(f"eps_ratio must be a positive finite number, got {self.eps_ratio}")
        elif self.eps_ratio is not None:
            raise ValueError("eps_ratio only applies to regularized mode")

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def regularized(cls, eps_ratio=DEFAULT_EPS_RATIO):
        return cls("regularized", float(eps_ratio))

    def __str__(self):
        return "exact" if self.kind == "exact" else f"regularized({self.eps_ratio:g})"


@dataclass(frozen=True, eq=False)
class LocalGram:
    matrix: np.ndarray

    @property
    def trace(self):
        return float(np.trace(self.matrix))

    @property
    def k(self):
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class WeightSet:
    """Per-point weights and how well they reconstruct each point.

    Attributes
    ----------
    indices : ndarray, shape (N, k)
        Neighbour indices the weights refer to.
    weights : ndarray, shape (N, k)
    residuals : ndarray, shape (N,)
        ``||x_i - sum_j w_j x_{i_j}||``.
    mode : WeightMode
    """

    indices: np.ndarray
    weights: np.ndarray
    residuals: np.ndarray
    mode: WeightMode

    @property
    def max_residual(self):
        return float(self.residuals.max())

    def reconstructs_exactly(self, diameter, rtol=1e-8):
        """True when every residual is at most ``rtol * diameter``."""
        return self.max_residual <= rtol * diameter


def local_gram(cloud, graph, i):
    """Gram matrix of the neighbour differences ``x_{i_j} - x_i``."""
    z = cloud.points[:, graph.indices[i]] - cloud.points[:, [i]]
    return LocalGram(z.T @ z)


def _as_matrix(gram):
    return gram.matrix if isinstance(gram, LocalGram) else np.asarray(gram, dtype=np.float64)


def solve_weights_exact(gram):
    """Exact solution of the constrained least-squares problem.

    A nonsingular C gives the unique ``C^-1 1 / (1^T C^-1 1)``. For singular
    C this returns the limit of the regularized weights as eps -> 0+, which
    is the minimum-norm exact solution: the normalised projection of 1 onto
    the null space of C when that projection is nonzero, else the
    normalised ``C^+ 1``.
    """
    c = _as_matrix(gram)
    k = c.shape[0]
    one = np.ones(k)
    if not np.all(np.isfinite(c)):
        raise InfeasibleStationarityError("infeasible stationarity: Gram matrix is not finite")
    tr = float(np.trace(c))
    evals, evecs = np.linalg.eigh(c)
    thresh = SINGULAR_RTOL * tr
    if tr > 0 and evals[0] > thresh:
        z = np.linalg.solve(c, one)
        return z / z.sum()

    in_range = evals > thresh if tr > 0 else np.zeros(k, dtype=bool)
    null_basis = evecs[:, ~in_range]
    p = null_basis @ (null_basis.T @ one)
    mass = p.sum()
    if mass > np.sqrt(np.finfo(float).eps) * k:
        return p / mass

    basis = evecs[:, in_range]
    z = basis @ ((basis.T @ one) / evals[in_range])
    s = z.sum()
    if not s > 0:
        raise InfeasibleStationarityError("infeasible stationarity: 1^T C^+ 1 vanishes")
    return z / s


def solve_weights_regularized(gram, eps_ratio):
    """``(C + eps I)^-1 1`` normalised to sum one, ``eps = eps_ratio * trace(C)``.

    When the trace is zero ``eps_ratio`` itself is used as eps.
    """
    if not eps_ratio > 0:
        raise ValueError(f"eps_ratio must be positive, got {eps_ratio}")
    c = _as_matrix(gram)
    k = c.shape[0]
    tr = float(np.trace(c))
    eps = eps_ratio * tr if tr > 0 else eps_ratio
    z = np.linalg.solve(c + eps * np.eye(k), np.ones(k))
    return z / z.sum()


def compute_weight_set(cloud, graph, mode=None):
    """Weights for every point of ``cloud`` over the neighbourhoods in ``graph``."""
    if mode is None:
        mode = WeightMode.exact()
    if graph.n != cloud.n:
        raise ValueError(f"graph has {graph.n} rows but cloud has {cloud.n} points")
    samples = cloud.samples()
    indices = np.asarray(graph.indices)
    grams = _backend.gram_batch(samples, indices)
    if mode.kind == "regularized":
        weights = np.asarray(_backend.regularized_weights(grams, mode.eps_ratio))
    else:
        weights = np.empty(indices.shape)
        for i in range(cloud.n):
            try:
                weights[i] = solve_weights_exact(grams[i])
            except InfeasibleStationarityError as exc:
                raise InfeasibleStationarityError(str(exc), index=i) from None
    recon = np.einsum("nk,nkd->nd", weights, samples[indices])
    residuals = np.linalg.norm(samples - recon, axis=1)
    for arr in (weights, residuals):
        arr.flags.writeable = False
    return WeightSet(indices, weights, residuals, mode)
