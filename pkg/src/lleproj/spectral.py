"""Alignment matrix, bottom eigenpairs and the LLE embedding itself."""
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .errors import CSVFormatError, EigensolverError
from .neighbors import NeighborGraph, knn
from .weights import WeightMode, WeightSet, compute_weight_set

#: eigenvalues at or below NULL_RTOL * mean(diag M) are treated as zero
NULL_RTOL = 1e-8
#: projection norm of 1/sqrt(N) onto the null space needed to call it "found"
CONSTANT_ATOL = 1e-6


@dataclass(frozen=True, eq=False)
class AlignmentMatrix:
    """Sparse weight matrix W and ``M = (I - W)^T (I - W)``."""

    W: sp.csr_matrix
    M: sp.csr_matrix

    @property
    def n(self):
        return self.W.shape[0]

    def dense_m(self):
        m = self.M.toarray()
        return 0.5 * (m + m.T)


@dataclass(frozen=True, eq=False)
class EmbeddingResult:
    """Output of :func:`lle_embed`.

    Attributes
    ----------
    Y : ndarray, shape (d, N)
        Rows are eigenvectors 2..d+1 of M (the first computed one is dropped).
    eigenvalues : ndarray, shape (d + 1,)
        Smallest eigenvalues of M, ascending.
    null_multiplicity : int
        Number of probed eigenvalues at or below ``tol_null``. When every
        probed eigenvalue is null this is only a lower bound.
    constant_vector_found : bool
        Whether ``1/sqrt(N)`` lies in the span of the near-null eigenvectors.
    """

    Y: np.ndarray
    eigenvalues: np.ndarray
    null_multiplicity: int
    constant_vector_found: bool
    tol_null: float
    probe_eigenvalues: np.ndarray
    graph: NeighborGraph
    weights: WeightSet
    alignment: AlignmentMatrix

    @property
    def d(self):
        return self.Y.shape[0]

    @property
    def selected_eigenvalues(self):
        return self.eigenvalues[1:]


def build_alignment(graph, weight_set):
    n, k = graph.indices.shape
    if weight_set.weights.shape != (n, k):
        raise ValueError(
            f"weights have shape {weight_set.weights.shape}, graph has shape {(n, k)}")
    if not np.array_equal(weight_set.indices, graph.indices):
        raise ValueError("weight set was computed on a different neighbour graph")
    rows = np.repeat(np.arange(n), k)
    W = sp.csr_matrix((weight_set.weights.ravel(), (rows, graph.indices.ravel())), shape=(n, n))
    A = (sp.identity(n, format="csr") - W).tocsr()
    M = (A.T @ A).tocsr()
    return AlignmentMatrix(W, M)


def _orient(vecs):
    # make the largest-magnitude entry of each column positive
    pivot = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivot, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def bottom_eigs(M, m, tol=1e-8):
    """The ``m`` smallest eigenpairs of the symmetric matrix ``M``.

    Uses a dense symmetric solve. Returns ``(values, vectors)`` with values
    ascending and eigenvectors as the columns of ``vectors``, each oriented
    so its largest-magnitude entry is positive.

    Raises
    ------
    EigensolverError
        If some ``||M g - lam g||`` exceeds ``tol * ||M||_F`` or the vectors
        are not orthonormal to 1e-8.
    """
    if sp.issparse(M):
        dense = M.toarray()
    else:
        dense = np.asarray(M, dtype=np.float64)
    n = dense.shape[0]
    if dense.shape != (n, n):
        raise ValueError(f"M must be square, got shape {dense.shape}")
    if not 1 <= m <= n:
        raise ValueError(f"m must satisfy 1 <= m <= N = {n}, got {m}")
    dense = 0.5 * (dense + dense.T)
    try:
        values, vectors = scipy.linalg.eigh(dense, subset_by_index=[0, m - 1])
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed: {exc}", None) from exc
    vectors = _orient(vectors)
    residuals = np.linalg.norm(dense @ vectors - vectors * values, axis=0)
    scale = np.linalg.norm(dense)
    if np.any(residuals > tol * scale):
        raise EigensolverError(
            f"eigenpair residuals {residuals.max():.3e} exceed {tol:g} * ||M||", residuals)
    gram_err = np.abs(vectors.T @ vectors - np.eye(m)).max()
    if gram_err > 1e-8:
        raise EigensolverError(f"eigenvectors not orthonormal (error {gram_err:.3e})", residuals)
    return values, vectors


def default_probe(d, n):
    return min(n, d + 6)


def lle_embed(cloud, k, d, mode=None, null_probe=None):
    """Run the full LLE pipeline on ``cloud``.

    The first computed eigenvector is discarded and the next ``d`` become
    the rows of Y, exactly as in the classical algorithm. When the null
    space of M is degenerate this rule can discard something other than
    the constant vector; ``null_multiplicity`` and ``constant_vector_found``
    report when that happens.

    Parameters
    ----------
    cloud : PointCloud
    k : int
        Neighbours per point.
    d : int
        Output dimension.
    mode : WeightMode, optional
        Defaults to exact weights.
    null_probe : int, optional
        How many bottom eigenpairs to compute for the null-space
        diagnostics (at least d + 1). Defaults to ``d + 6``.
    """
    if mode is None:
        mode = WeightMode.exact()
    n = cloud.n
    if not 1 <= d < n:
        raise ValueError(f"d must satisfy 1 <= d < N = {n}, got d={d}")
    graph = knn(cloud, k)
    weight_set = compute_weight_set(cloud, graph, mode)
    alignment = build_alignment(graph, weight_set)
    m = default_probe(d, n) if null_probe is None else min(n, null_probe)
    m = max(m, d + 1)
    values, vectors = bottom_eigs(alignment.M, m)

    tol_null = NULL_RTOL * float(alignment.M.diagonal().mean())
    null_mask = values <= tol_null
    null_multiplicity = int(null_mask.sum())
    constant = np.full(n, 1.0 / np.sqrt(n))
    null_vecs = vectors[:, null_mask]
    proj = np.linalg.norm(null_vecs.T @ constant) if null_multiplicity else 0.0
    Y = np.ascontiguousarray(vectors[:, 1:d + 1].T)
    return EmbeddingResult(
        Y=Y,
        eigenvalues=values[:d + 1].copy(),
        null_multiplicity=null_multiplicity,
        constant_vector_found=bool(proj >= 1.0 - CONSTANT_ATOL),
        tol_null=tol_null,
        probe_eigenvalues=values,
        graph=graph,
        weights=weight_set,
        alignment=alignment,
    )


def embedding_cost(Y, alignment):
    """``||(I - W) Y^T||_F^2`` evaluated through W."""
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    r = Y.T - alignment.W @ Y.T
    return float(np.sum(r * r))


def format_embedding_csv(Y, eigenvalues=None, meta=None):
    lines = []
    for key, value in (meta or {}).items():
        lines.append(f"# {key}={value}")
    if eigenvalues is not None:
        lines.append("# eigenvalues=" + " ".join("%.17g" % v for v in eigenvalues))
    Y = np.atleast_2d(Y)
    lines.append(",".join(f"y{j + 1}" for j in range(Y.shape[0])))
    for col in Y.T:
        lines.append(",".join("%.17g" % v for v in col))
    return "\n".join(lines) + "\n"


def save_embedding_csv(Y, path, eigenvalues=None, meta=None):
    """Write Y (d x N) one point per row; eigenvalues go into a ``#`` comment."""
    Path(path).write_text(format_embedding_csv(Y, eigenvalues, meta))


def load_embedding_csv(path):
    """Inverse of :func:`save_embedding_csv`; returns ``(Y, eigenvalues, meta)``."""
    meta, eigenvalues, header, rows = {}, None, None, []
    for lineno, line in enumerate(io.StringIO(Path(path).read_text()), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            if key == "eigenvalues":
                eigenvalues = np.array([float(v) for v in value.split()])
            else:
                meta[key] = value
            continue
        fields = line.split(",")
        if header is None:
            header = fields
            if header != [f"y{j + 1}" for j in range(len(header))]:
                raise CSVFormatError(f"unexpected header {header}", lineno)
            continue
        if len(fields) != len(header):
            raise CSVFormatError(f"expected {len(header)} fields, got {len(fields)}", lineno)
        try:
            rows.append([float(v) for v in fields])
        except ValueError as exc:
            raise CSVFormatError(str(exc), lineno) from None
    if not rows:
        raise CSVFormatError("no rows")
    return np.array(rows).T, eigenvalues, meta
