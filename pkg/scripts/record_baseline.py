"""Record the measured values behind the acceptance thresholds.

    python scripts/record_baseline.py [--out baselines/acceptance_baseline.json]

Runs the acceptance configuration (N=1000, k=12, d=2, seed 0, isometry
seed 1) plus a few extra seeds to show how stable each margin is.
"""
import argparse
import json
import platform
from pathlib import Path

import numpy as np

import lleproj
from lleproj.dataset import embed_named, gen_swiss_roll_hole
from lleproj.diagnostics import affine_fit_residual, param_recovery_score
from lleproj.oracle import projection_pattern
from lleproj.weights import WeightMode


def measure(seed, embed_seed, n=1000, k=12, d=2):
    roll = gen_swiss_roll_hole(n, seed)
    out = {}
    for name in ("e1", "e2", "e3"):
        cloud = embed_named(roll, name, 18, embed_seed)
        for label, mode in (("exact", WeightMode.exact()), ("reg", WeightMode.regularized(1e-3))):
            res = lleproj.lle_embed(cloud, k, d, mode)
            entry = {
                "affine_fit_residual": affine_fit_residual(cloud.points, res.Y),
                "param_recovery": param_recovery_score(res, cloud),
                "null_multiplicity": res.null_multiplicity,
                "constant_vector_found": res.constant_vector_found,
                "max_residual_over_diameter": res.weights.max_residual / cloud.diameter(),
                "eigenvalues": res.eigenvalues.tolist(),
            }
            if name == "e1" and label == "exact":
                pat = projection_pattern(cloud, res.weights, d)
                entry["pattern_cost"] = pat.cost
                entry["pattern_constraint_error"] = pat.constraint_error
            out[f"{name}_{label}"] = entry
    out["sweep_3d"] = {
        "%g" % r: affine_fit_residual(
            roll.points, lleproj.lle_embed(roll, k, d, WeightMode.regularized(r)).Y)
        for r in (1e-1, 1e-3, 1e-6, 1e-9, 1e-12)
    }
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="baselines/acceptance_baseline.json")
    ap.add_argument("--extra-seeds", type=int, default=5)
    args = ap.parse_args()
    data = {
        "backend": lleproj.BACKEND,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "acceptance": measure(0, 1),
        "other_seeds": {str(s): measure(s, s + 10) for s in range(1, args.extra_seeds + 1)},
    }
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
