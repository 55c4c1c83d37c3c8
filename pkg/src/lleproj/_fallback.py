"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Inputs are sample-major: ``samples`` has shape (N, D), one row per point.
"""
import numpy as np

_ROW_CHUNK = 256


def knn_indices(samples, k):
    """Exact k nearest neighbours of every row, excluding the row itself.

    Squared distances are accumulated one coordinate at a time so that the
    compiled kernel, which sums in the same order, produces identical
    values. Ties are broken by the smaller index.
    """
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    n, dim = samples.shape
    out = np.empty((n, k), dtype=np.int64)
    for start in range(0, n, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, n)
        d2 = np.zeros((stop - start, n))
        for m in range(dim):
            diff = samples[start:stop, m][:, None] - samples[:, m][None, :]
            d2 += diff * diff
        rows = np.arange(stop - start)
        d2[rows, rows + start] = np.inf
        order = np.argsort(d2, axis=1, kind="stable")
        out[start:stop] = order[:, :k]
    return out


def gram_batch(samples, indices):
    """Stack of local Gram matrices, shape (N, k, k)."""
    samples = np.asarray(samples, dtype=np.float64)
    z = samples[indices] - samples[:, None, :]
    return np.einsum("nad,nbd->nab", z, z)


def regularized_weights(grams, eps_ratio):
    """Solve ``(C + eps I) z = 1`` per point and normalise z to sum one.

    ``eps = eps_ratio * trace(C)``, or ``eps_ratio`` itself when the trace
    vanishes.
    """
    grams = np.asarray(grams, dtype=np.float64)
    n, k, _ = grams.shape
    tr = np.trace(grams, axis1=1, axis2=2)
    eps = np.where(tr > 0, eps_ratio * tr, eps_ratio)
    a = grams + eps[:, None, None] * np.eye(k)
    z = np.linalg.solve(a, np.ones((n, k, 1)))[..., 0]
    return z / z.sum(axis=1, keepdims=True)
