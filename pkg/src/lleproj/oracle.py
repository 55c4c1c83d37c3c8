"""Projection patterns: the linear solutions of the embedding problem.

When every point is reconstructed exactly by its weighted neighbours and
rank(X) >= d, the map ``A = diag(lam_1^-1/2, ..., lam_d^-1/2) [u_1 ... u_d]^T``
built from the top eigenpairs of ``X X^T`` sends X to ``Y = A X`` with zero
reconstruction cost and ``Y Y^T = I``. Nothing here touches M, so comparing
these patterns with the spectral output is an independent check.
"""
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionError

#: d-th singular value must exceed RANK_RTOL times the largest
RANK_RTOL = 1e-10
#: reconstruction residuals up to A1_RTOL * diameter count as exact
A1_RTOL = 1e-8
CONSTRAINT_TOL = 1e-8


@dataclass(frozen=True)
class Certificate:
    cost: float
    constraint_error: float


@dataclass(frozen=True, eq=False)
class ProjectionPattern:
    """A d x D map A, the pattern ``Y = A X`` and its certificate.

    ``exact_reconstruction`` records whether the weights reproduce every
    point to ``A1_RTOL * diameter``; ``certified`` additionally requires
    the orthonormality constraint to hold to ``CONSTRAINT_TOL``.
    """

    A: np.ndarray
    Y: np.ndarray
    top_eigenvalues: np.ndarray
    cost: float
    constraint_error: float
    exact_reconstruction: bool

    @property
    def certified(self):
        return self.exact_reconstruction and self.constraint_error <= CONSTRAINT_TOL


def data_gram_top_eigs(cloud, d):
    """Top ``d`` eigenpairs of ``X X^T`` in descending order.

    Returns ``(values, vectors)`` with ``vectors`` of shape (D, d).
    """
    X = cloud.points
    if d < 1:
        raise ValueError("d must be positive")
    sv = np.linalg.svd(X, compute_uv=False)
    if d > sv.size or not sv[d - 1] > RANK_RTOL * sv[0]:
        raise AssumptionError(f"rank condition violated: rank(X) < d = {d}")
    values, vectors = np.linalg.eigh(X @ X.T)
    order = np.argsort(values)[::-1][:d]
    return values[order], vectors[:, order]


def pattern_cost(Y, indices, weights):
    """Sum over points of ``||y_i - sum_j w_j y_{i_j}||^2``."""
    Y = np.atleast_2d(Y)
    r = Y - np.einsum("nk,dnk->dn", weights, Y[:, indices])
    return float(np.sum(r * r))


def constraint_error(Y):
    Y = np.atleast_2d(Y)
    return float(np.linalg.norm(Y @ Y.T - np.eye(Y.shape[0])))


def projection_pattern(cloud, weight_set, d):
    values, vectors = data_gram_top_eigs(cloud, d)
    A = vectors.T / np.sqrt(values)[:, None]
    Y = A @ cloud.points
    exact = weight_set.reconstructs_exactly(cloud.diameter(), A1_RTOL)
    return ProjectionPattern(
        A=A,
        Y=Y,
        top_eigenvalues=values,
        cost=pattern_cost(Y, weight_set.indices, weight_set.weights),
        constraint_error=constraint_error(Y),
        exact_reconstruction=exact,
    )


def verify_solution(Y, alignment):
    """Cost ``||(I - W) Y^T||_F^2`` and ``||Y Y^T - I||_F`` for any candidate Y."""
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    if Y.shape[1] != alignment.n:
        raise ValueError(f"Y has {Y.shape[1]} columns, alignment has {alignment.n} points")
    r = Y.T - alignment.W @ Y.T
    return Certificate(float(np.sum(r * r)), constraint_error(Y))
