"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--n 500 1000 2000] [--repeat 3]

Times each kernel on the 18-dimensional embedded Swiss roll and the whole
``lle_embed`` pipeline under both backends.
"""
import argparse
import time

import numpy as np

from lleproj import _backend, _fallback
from lleproj.dataset import embed_named, gen_swiss_roll_hole
from lleproj.spectral import lle_embed
from lleproj.weights import WeightMode

try:
    from lleproj import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def use(kern):
    for name in ("knn_indices", "gram_batch", "regularized_weights"):
        setattr(_backend, name, getattr(kern, name))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[500, 1000, 2000])
    ap.add_argument("--k", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _fallback)] + ([("cython", _kernels)] if _kernels else [])
    if _kernels is None:
        print("compiled kernels not built; timing the numpy fallback only")

    print(f"{'N':>6} {'stage':<22}" + "".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    for n in args.n:
        cloud = embed_named(gen_swiss_roll_hole(n, 0), "e1", 18, 1)
        x = cloud.samples()
        idx = _fallback.knn_indices(x, args.k)
        grams = _fallback.gram_batch(x, idx)
        stages = {
            "knn": lambda k: k.knn_indices(x, args.k),
            "gram": lambda k: k.gram_batch(x, idx),
            "regularized weights": lambda k: k.regularized_weights(grams, 1e-3),
        }
        for stage, fn in stages.items():
            t = [best_of(lambda: fn(kern), args.repeat) for _, kern in backends]
            sp = f"{t[0] / t[1]:9.1f}x" if len(t) > 1 else ""
            print(f"{n:>6} {stage:<22}" + "".join(f"{v * 1e3:10.2f}ms" for v in t) + sp)
        t = []
        for _, kern in backends:
            use(kern)
            t.append(best_of(lambda: lle_embed(cloud, args.k, 2, WeightMode.regularized(1e-3)),
                             args.repeat))
        use(_kernels or _fallback)
        sp = f"{t[0] / t[1]:9.1f}x" if len(t) > 1 else ""
        print(f"{n:>6} {'lle_embed (total)':<22}" + "".join(f"{v * 1e3:10.2f}ms" for v in t) + sp)


if __name__ == "__main__":
    main()
