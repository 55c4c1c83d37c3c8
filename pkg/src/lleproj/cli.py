"""Command-line driver for the Swiss-roll experiments.

    lleproj generate --n 1000 --seed 0 --out data/
    lleproj run --embed e1 --mode exact --out runs/e1_exact
    lleproj sweep --eps-ratios 1e-1,1e-3,1e-6,1e-9,1e-12 --out runs/sweep

Settings may also come from a ``key=value`` file passed with ``--config``;
command-line flags take precedence. Exit status is 0 on success, 2 for a
configuration error and 3 for a numerical failure.
"""
import argparse
import logging
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .dataset import EMBEDDINGS, embed_named, format_csv, gen_swiss_roll_hole, load_csv
from .diagnostics import diagnose, format_report_csv, report_row
from .errors import AssumptionError, CSVFormatError, EigensolverError, InfeasibleStationarityError
from .spectral import format_embedding_csv, lle_embed
from .svg import scatter_svg
from .weights import WeightMode

log = logging.getLogger("lleproj")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n_points: int = 1000
    seed: int = 0
    k: int = 12
    d: int = 2
    embedding: str = "none"
    d_out: int = 18
    embed_seed: int = 1
    mode: str = "reg"
    eps_ratio: float = 1e-3
    hole: bool = True
    input: Optional[str] = None
    out: str = "."

    def validate(self):
        if self.n_points < 2:
            raise ConfigError(f"n must be at least 2, got {self.n_points}")
        if self.input is None and not 1 <= self.k < self.n_points:
            raise ConfigError(f"k must satisfy 1 <= k < n = {self.n_points}, got k={self.k}")
        if self.d < 1:
            raise ConfigError(f"d must be positive, got {self.d}")
        if self.embedding not in EMBEDDINGS:
            raise ConfigError(f"embed must be one of {', '.join(EMBEDDINGS)}, got {self.embedding!r}")
        if self.embedding != "none" and self.d_out < 3:
            raise ConfigError(f"dout must be at least 3, got {self.d_out}")
        if self.mode not in ("exact", "reg"):
            raise ConfigError(f"mode must be exact or reg, got {self.mode!r}")
        if self.mode == "reg" and not (self.eps_ratio > 0 and np.isfinite(self.eps_ratio)):
            raise ConfigError(f"eps-ratio must be positive, got {self.eps_ratio}")
        return self

    def weight_mode(self):
        if self.mode == "exact":
            return WeightMode.exact()
        return WeightMode.regularized(self.eps_ratio)


# config-file keys and flag dests mapped to ExperimentConfig fields
_KEYS = {
    "n": "n_points", "n_points": "n_points", "seed": "seed", "k": "k", "d": "d",
    "embed": "embedding", "embedding": "embedding", "dout": "d_out", "d_out": "d_out",
    "embed_seed": "embed_seed", "mode": "mode", "eps_ratio": "eps_ratio",
    "hole": "hole", "input": "input", "out": "out", "eps_ratios": "eps_ratios",
}
_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_ratios(text):
    try:
        ratios = [float(v) for v in str(text).replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise ConfigError(f"bad eps ratio list {text!r}: {exc}") from None
    return ratios


def _coerce(name, value):
    if value is None:
        return None
    kind = _TYPES.get(name)
    try:
        if kind in (int, "int"):
            return int(value)
        if kind in (float, "float"):
            return float(value)
        if kind in (bool, "bool"):
            return value if isinstance(value, bool) else _parse_bool(value)
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from None
    if name == "embedding":
        return str(value).lower()
    return str(value)


def read_config_file(path):
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    settings = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: cannot parse {raw!r}")
        settings[_KEYS[key]] = value.strip()
    return settings


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file; flags override it")
    common.add_argument("--n", dest="n_points", help="number of points (default 1000)")
    common.add_argument("--seed", help="Swiss roll sampling seed (default 0)")
    common.add_argument("--k", help="neighbours per point (default 12)")
    common.add_argument("--d", help="output dimension (default 2)")
    common.add_argument("--embed", dest="embedding", choices=EMBEDDINGS,
                        help="high-dimensional embedding applied to the roll (default none)")
    common.add_argument("--dout", dest="d_out", help="ambient dimension of e1 (default 18)")
    common.add_argument("--embed-seed", dest="embed_seed", help="seed of the e1 isometry (default 1)")
    common.add_argument("--mode", choices=("exact", "reg"), help="weight solver (default reg)")
    common.add_argument("--eps-ratio", dest="eps_ratio",
                        help="regularization eps / trace(C_i) (default 1e-3)")
    common.add_argument("--no-hole", dest="hole", action="store_const", const=False,
                        help="sample the full roll without the hole")
    common.add_argument("--input", help="read the point cloud from this CSV instead of sampling")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="lleproj", description="LLE projection-pattern experiments on the Swiss roll.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="write swissroll.csv")
    sub.add_parser("run", parents=[common],
                   help="run LLE once; write embedding.csv, report.csv, scatter.svg")
    sweep = sub.add_parser("sweep", parents=[common],
                           help="regularized runs over several eps ratios")
    sweep.add_argument("--eps-ratios", dest="eps_ratios",
                       help="comma-separated eps ratios (default 1e-1,1e-3,1e-6,1e-9,1e-12)")
    return parser


def resolve_config(args):
    """Merge defaults, the optional config file and explicit flags."""
    settings = read_config_file(args.config) if args.config else {}
    for key in set(_KEYS.values()):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    ratios = settings.pop("eps_ratios", None)
    values = {name: _coerce(name, v) for name, v in settings.items()}
    config = replace(ExperimentConfig(), **values).validate()
    return config, ratios


def load_cloud(config):
    if config.input is not None:
        try:
            cloud = load_csv(config.input)
        except OSError as exc:
            raise ConfigError(f"cannot read input: {exc}") from None
    else:
        cloud = gen_swiss_roll_hole(config.n_points, config.seed, None if config.hole else False)
    if not 1 <= config.k < cloud.n:
        raise ConfigError(f"k must satisfy 1 <= k < n = {cloud.n}, got k={config.k}")
    if config.d >= cloud.n:
        raise ConfigError(f"d must be smaller than n = {cloud.n}")
    return embed_named(cloud, config.embedding, config.d_out, config.embed_seed)


def run_experiment(config, cloud, out_dir):
    """One LLE run; writes its three output files into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    mode = config.weight_mode()
    result = lle_embed(cloud, config.k, config.d, mode)
    report = diagnose(cloud, result)
    context = {
        "label": f"{config.embedding}-{mode}",
        "embedding": config.embedding,
        "mode": config.mode,
        "eps_ratio": config.eps_ratio if config.mode == "reg" else None,
        "n": cloud.n,
        "k": config.k,
        "d": config.d,
        "seed": config.seed,
        "eigenvalues": result.eigenvalues,
    }
    row = report_row(report, **context)
    meta = {k: row[k] for k in ("embedding", "mode", "eps_ratio", "n", "k", "d", "seed")}
    (out_dir / "embedding.csv").write_text(
        format_embedding_csv(result.Y, result.eigenvalues, meta))
    (out_dir / "report.csv").write_text(format_report_csv([row]))
    colors = cloud.params[:, 0] if cloud.params is not None else None
    (out_dir / "scatter.svg").write_text(scatter_svg(result.Y, colors, title=row["label"]))
    log.info("%s: affine_fit_residual=%.4g null_multiplicity=%d",
             row["label"], report.affine_fit_residual, report.null_multiplicity)
    return row


def cmd_generate(config):
    cloud = load_cloud(config)
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "swissroll.csv").write_text(format_csv(cloud))
    return out / "swissroll.csv"


def cmd_run(config):
    return run_experiment(config, load_cloud(config), config.out)


def _ratio_dir(ratio):
    return "eps_" + ("%g" % ratio).replace("+", "")


def cmd_sweep_eps(config, eps_ratios):
    """Regularized runs for each ratio in ``eps_ratios`` plus a summary CSV."""
    if not eps_ratios:
        raise ConfigError("eps ratio list is empty")
    for r in eps_ratios:
        if not (r > 0 and np.isfinite(r)):
            raise ConfigError(f"eps ratios must be positive, got {r}")
    cloud = load_cloud(config)
    out = Path(config.out)
    rows = []
    for ratio in eps_ratios:
        cfg = replace(config, mode="reg", eps_ratio=ratio)
        rows.append(run_experiment(cfg, cloud, out / _ratio_dir(ratio)))
    columns = ["eps_ratio", "affine_fit_residual", "param_recovery", "procrustes_to_pattern",
               "null_multiplicity", "constant_vector_found", "projection_detected"]
    lines = [",".join(columns)] + [",".join(r[c] for c in columns) for r in rows]
    (out / "sweep_summary.csv").write_text("\n".join(lines) + "\n")
    return rows


DEFAULT_SWEEP = "1e-1,1e-3,1e-6,1e-9,1e-12"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        config, ratios = resolve_config(args)
        if args.command == "generate":
            cmd_generate(config)
        elif args.command == "run":
            cmd_run(config)
        else:
            cmd_sweep_eps(config, _parse_ratios(ratios if ratios is not None else DEFAULT_SWEEP))
    except (ConfigError, CSVFormatError) as exc:
        print(f"lleproj: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AssumptionError, EigensolverError, InfeasibleStationarityError,
            np.linalg.LinAlgError) as exc:
        print(f"lleproj: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
