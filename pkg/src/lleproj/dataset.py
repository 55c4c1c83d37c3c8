"""Swiss roll with a hole, high-dimensional embeddings of it, and CSV I/O.

Point clouds are stored column-wise: ``points`` has shape (D, N) and column
``i`` is the sample x_i. CSV files are row-wise, one sample per line.
"""
import csv
import enum
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist

from .errors import CSVFormatError

T_RANGE = (1.5 * np.pi, 4.5 * np.pi)
H_RANGE = (0.0, 21.0)


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle ``[t_lo, t_hi] x [h_lo, h_hi]`` in (t, h)."""

    t_lo: float
    t_hi: float
    h_lo: float
    h_hi: float

    def contains(self, t, h):
        return (t > self.t_lo) & (t < self.t_hi) & (h > self.h_lo) & (h < self.h_hi)


def default_hole():
    """Centred rectangle covering a third of each parameter range."""
    t0, t1 = T_RANGE
    h0, h1 = H_RANGE
    dt, dh = (t1 - t0) / 3, (h1 - h0) / 3
    return Rectangle(t0 + dt, t1 - dt, h0 + dh, h1 - dh)


@dataclass(frozen=True, eq=False)
class PointCloud:
    """N points in R^D, optionally with intrinsic (arc length, height) params.

    Attributes
    ----------
    points : ndarray, shape (D, N)
    params : ndarray, shape (N, 2) or None
    seed : int or None
        Seed the cloud was generated from, if any.
    """

    points: np.ndarray
    params: Optional[np.ndarray] = None
    seed: Optional[int] = None

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"points must be a non-empty (D, N) matrix, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain non-finite entries")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if self.params is not None:
            par = np.array(self.params, dtype=np.float64)
            if par.ndim != 2 or par.shape[0] != pts.shape[1]:
                raise ValueError(
                    f"params must have one row per point ({pts.shape[1]}), got shape {par.shape}")
            if not np.all(np.isfinite(par)):
                raise ValueError("params contain non-finite entries")
            par.flags.writeable = False
            object.__setattr__(self, "params", par)

    @property
    def dim(self):
        return self.points.shape[0]

    @property
    def n(self):
        return self.points.shape[1]

    def samples(self):
        """Sample-major (N, D) contiguous copy of the points."""
        return np.ascontiguousarray(self.points.T)

    def diameter(self):
        """Largest pairwise Euclidean distance."""
        if self.n < 2:
            return 0.0
        return float(pdist(self.points.T).max())

    def with_points(self, points):
        return PointCloud(points, self.params, self.seed)


def arc_length(t):
    """Arc length of the spiral ``t -> t (cos t, sin t)`` measured from t = 1.5 pi."""
    def primitive(u):
        return 0.5 * (u * np.sqrt(1.0 + u * u) + np.arcsinh(u))
    return primitive(np.asarray(t, dtype=np.float64)) - primitive(T_RANGE[0])


def gen_swiss_roll_hole(n, seed=0, hole=None):
    """Sample the Swiss roll with a rectangular hole by rejection.

    Parameters
    ----------
    n : int
        Number of points returned (exact).
    seed : int
    hole : Rectangle, optional
        Region of (t, h) to reject. ``None`` uses :func:`default_hole`;
        pass ``False`` to sample the full roll.

    Returns
    -------
    PointCloud
        Points ``(t cos t, h, t sin t)`` with params ``(s(t), h)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if hole is None:
        hole = default_hole()
    t0, t1 = T_RANGE
    h0, h1 = H_RANGE
    if hole is not False:
        bounds = (hole.t_lo, hole.t_hi, hole.h_lo, hole.h_hi)
        if not all(math.isfinite(b) for b in bounds):
            raise ValueError("hole bounds must be finite")
        if hole.t_lo > hole.t_hi or hole.h_lo > hole.h_hi:
            raise ValueError("hole bounds are inverted")
        if hole.t_lo <= t0 and hole.t_hi >= t1 and hole.h_lo <= h0 and hole.h_hi >= h1:
            raise ValueError("empty support: hole covers the whole parameter domain")

    rng = np.random.default_rng(seed)
    kept_t, kept_h, have = [], [], 0
    batch = max(2 * n, 64)
    while have < n:
        t = rng.uniform(t0, t1, size=batch)
        h = rng.uniform(h0, h1, size=batch)
        if hole is not False:
            keep = ~hole.contains(t, h)
            t, h = t[keep], h[keep]
        kept_t.append(t)
        kept_h.append(h)
        have += t.size
    t = np.concatenate(kept_t)[:n]
    h = np.concatenate(kept_h)[:n]
    points = np.vstack([t * np.cos(t), h, t * np.sin(t)])
    params = np.column_stack([arc_length(t), h])
    return PointCloud(points, params, seed)


class EmbeddingKind(enum.Enum):
    ISOMETRIC = "isometric"
    EXTRA_DIM_SINE = "extra_dim_sine"
    PER_COORD_SINE = "per_coord_sine"


@dataclass(frozen=True, eq=False)
class EmbeddingOp:
    """``x -> matrix @ x + amplitude * perturbation(x)``.

    For ``ISOMETRIC`` the perturbation is zero. ``EXTRA_DIM_SINE`` appends
    ``amplitude * sin(sum(x))`` as a new last coordinate and
    ``PER_COORD_SINE`` adds ``amplitude * sin(x_j)`` to every coordinate.
    """

    kind: EmbeddingKind
    matrix: np.ndarray
    amplitude: float = 0.0

    @property
    def d_in(self):
        return self.matrix.shape[1]

    @property
    def d_out(self):
        return self.matrix.shape[0]


def make_isometric_embedding(d_in, d_out, seed=0):
    """Random linear isometry R^d_in -> R^d_out (orthonormal columns)."""
    if d_in < 1:
        raise ValueError("d_in must be positive")
    if d_out < d_in:
        raise ValueError(f"d_out ({d_out}) must be >= d_in ({d_in})")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d_out, d_in)))
    # fix the QR sign ambiguity so the result is a function of the seed only
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    return EmbeddingOp(EmbeddingKind.ISOMETRIC, q)


def make_extra_dim_sine(dim, amplitude=0.1):
    matrix = np.vstack([np.eye(dim), np.zeros((1, dim))])
    return EmbeddingOp(EmbeddingKind.EXTRA_DIM_SINE, matrix, amplitude)


def make_per_coord_sine(dim, amplitude=0.1):
    return EmbeddingOp(EmbeddingKind.PER_COORD_SINE, np.eye(dim), amplitude)


def apply_embedding(op, cloud):
    """Apply ``op`` to every point of ``cloud``; params are carried through."""
    if op.d_in != cloud.dim:
        raise ValueError(
            f"embedding expects {op.d_in}-dimensional input, cloud has dimension {cloud.dim}")
    x = cloud.points
    y = op.matrix @ x
    if op.kind is EmbeddingKind.EXTRA_DIM_SINE:
        y[-1] = op.amplitude * np.sin(x.sum(axis=0))
    elif op.kind is EmbeddingKind.PER_COORD_SINE:
        y = y + op.amplitude * np.sin(x)
    return cloud.with_points(y)


EMBEDDINGS = ("none", "e1", "e2", "e3")


def embed_named(cloud, name, d_out=18, seed=0):
    """Apply one of the named embeddings ``none``, ``e1``, ``e2``, ``e3``.

    ``e1`` is a seeded random isometry into R^d_out; ``e2`` and ``e3`` are
    the sine perturbations of the ``e1`` image.
    """
    name = name.lower()
    if name not in EMBEDDINGS:
        raise ValueError(f"unknown embedding {name!r}; expected one of {EMBEDDINGS}")
    if name == "none":
        return cloud
    e1 = apply_embedding(make_isometric_embedding(cloud.dim, d_out, seed), cloud)
    if name == "e1":
        return e1
    if name == "e2":
        return apply_embedding(make_extra_dim_sine(d_out), e1)
    return apply_embedding(make_per_coord_sine(d_out), e1)


def format_csv(cloud):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = [f"x{j + 1}" for j in range(cloud.dim)]
    if cloud.params is not None:
        header += ["s", "h"]
    w.writerow(header)
    for i in range(cloud.n):
        row = ["%.17g" % v for v in cloud.points[:, i]]
        if cloud.params is not None:
            row += ["%.17g" % v for v in cloud.params[i]]
        w.writerow(row)
    return buf.getvalue()


def save_csv(cloud, path):
    """Write ``cloud`` as CSV with 17 significant digits (lossless for doubles)."""
    Path(path).write_text(format_csv(cloud))


def load_csv(path):
    """Read a CSV written by :func:`save_csv`."""
    text = Path(path).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(lineno, r) for lineno, r in enumerate(rows, start=1) if r]
    if not rows:
        raise CSVFormatError("no rows")
    (_, header), body = rows[0], rows[1:]
    header = [h.strip() for h in header]
    has_params = header[-2:] == ["s", "h"]
    n_x = len(header) - (2 if has_params else 0)
    if n_x < 1 or header[:n_x] != [f"x{j + 1}" for j in range(n_x)]:
        raise CSVFormatError(f"unexpected header {header}", 1)
    if not body:
        raise CSVFormatError("no rows")
    values = np.empty((len(body), len(header)))
    for r, (lineno, row) in enumerate(body):
        if len(row) != len(header):
            raise CSVFormatError(f"expected {len(header)} fields, got {len(row)}", lineno)
        try:
            values[r] = [float(v) for v in row]
        except ValueError as exc:
            raise CSVFormatError(str(exc), lineno) from None
    params = values[:, n_x:] if has_params else None
    return PointCloud(values[:, :n_x].T, params)
