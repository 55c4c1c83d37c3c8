"""Scores that tell a projection pattern apart from a genuine unrolling."""
import csv
import io
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from .oracle import projection_pattern

#: affine_fit_residual at or below this counts as a projection pattern
PROJECTION_THRESHOLD = 0.05
REPORT_SCHEMA_VERSION = 1


def _centered(a):
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    return a - a.mean(axis=1, keepdims=True)


def affine_fit_residual(X, Y):
    """Relative residual of the best affine fit ``Y ~ B X + b 1^T``.

    Returns ``min ||B X + b 1^T - Y|| / ||Y - mean(Y)||`` (Frobenius), a
    number in [0, 1]. Zero means Y is an exact affine image of X.
    """
    Xc, Yc = _centered(X), _centered(Y)
    D, N = Xc.shape
    if Yc.shape[1] != N:
        raise ValueError(f"X has {N} points but Y has {Yc.shape[1]}")
    if N <= D + 1:
        raise ValueError(f"need more than D + 1 = {D + 1} points, got {N}")
    if not np.any(Xc):
        raise ValueError("X is degenerate (all points coincide)")
    denom = np.linalg.norm(Yc)
    if denom == 0:
        raise ValueError("Y has zero variance")
    B, *_ = np.linalg.lstsq(Xc.T, Yc.T, rcond=None)
    resid = np.linalg.norm(Xc.T @ B - Yc.T)
    return float(min(1.0, resid / denom))


def _normalized(a):
    c = _centered(a)
    norm = np.linalg.norm(c)
    if norm == 0:
        raise ValueError("configuration has zero variance")
    return c / norm


def procrustes_distance(Y, Z):
    """Distance between configurations up to translation, scale and O(d).

    Both are centred and scaled to unit Frobenius norm, then
    ``min_Q ||Q Y' - Z'||`` over orthogonal Q is returned (in [0, sqrt 2]).
    """
    Y, Z = np.atleast_2d(Y), np.atleast_2d(Z)
    if Y.shape != Z.shape:
        raise ValueError(f"shape mismatch {Y.shape} vs {Z.shape}")
    if Y.shape[1] < Y.shape[0]:
        raise ValueError("need at least d points")
    Yn, Zn = _normalized(Y), _normalized(Z)
    # explicit residual; sqrt(2 - 2 * nuclear norm) loses half the digits near 0
    U, _, Vt = np.linalg.svd(Zn @ Yn.T)
    return float(np.linalg.norm((U @ Vt) @ Yn - Zn))


def whiten(params):
    """Centre the (N, p) params and rescale so the rows of the result are
    orthonormal, matching the ``Y Y^T = I`` normalisation of an embedding."""
    P = _centered(np.asarray(params, dtype=np.float64).T)
    evals, evecs = np.linalg.eigh(P @ P.T)
    if evals.min() <= 0:
        raise ValueError("params are degenerate")
    return (evecs / np.sqrt(evals)).T @ P


def param_recovery_score(result, cloud):
    """Procrustes distance between the embedding and the whitened chart.

    ``result`` may be an :class:`EmbeddingResult` or a bare (d, N) array.
    """
    if cloud.params is None:
        raise ValueError("cloud has no ground-truth params")
    Y = result.Y if hasattr(result, "Y") else np.asarray(result)
    return procrustes_distance(Y, whiten(cloud.params))


@dataclass(frozen=True)
class DiagnosticsReport:
    affine_fit_residual: float
    procrustes_to_pattern: float
    param_recovery: Optional[float]
    null_multiplicity: int
    constant_vector_found: bool
    max_weight_residual: float

    @property
    def projection_detected(self):
        return self.affine_fit_residual <= PROJECTION_THRESHOLD


def diagnose(cloud, result):
    """Full :class:`DiagnosticsReport` for an LLE run on ``cloud``."""
    pattern = projection_pattern(cloud, result.weights, result.d)
    recovery = param_recovery_score(result, cloud) if cloud.params is not None else None
    return DiagnosticsReport(
        affine_fit_residual=affine_fit_residual(cloud.points, result.Y),
        procrustes_to_pattern=procrustes_distance(result.Y, pattern.Y),
        param_recovery=recovery,
        null_multiplicity=result.null_multiplicity,
        constant_vector_found=result.constant_vector_found,
        max_weight_residual=result.weights.max_residual,
    )


REPORT_COLUMNS = (
    ["schema_version", "label", "embedding", "mode", "eps_ratio", "n", "k", "d", "seed"]
    + [f.name for f in fields(DiagnosticsReport)]
    + ["projection_detected", "eigenvalues"]
)


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def report_row(report, **context):
    """Flatten ``report`` plus experiment ``context`` into a column dict."""
    row = {"schema_version": REPORT_SCHEMA_VERSION}
    row.update(context)
    row.update(asdict(report))
    row["projection_detected"] = report.projection_detected
    eig = row.get("eigenvalues")
    if eig is not None and not isinstance(eig, str):
        row["eigenvalues"] = " ".join("%.17g" % v for v in eig)
    return {c: _cell(row.get(c)) for c in REPORT_COLUMNS}


def format_report_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def read_report_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
