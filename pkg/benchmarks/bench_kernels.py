"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, backend) with the best wall time and checks that
both backends agree to 1e-12.
"""

import argparse
import time

import numpy as np

from capgeo import _pieces, gallery
from capgeo.kernels import backends


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    stadium = gallery.make_stadium().pieces
    ellipse = gallery.make_ellipse(2, 1, 1024).pieces
    pts = rng.uniform(-2.5, 2.5, size=(4000, 2))
    pairs = _pieces.candidate_pairs(ellipse, 1e-7)
    yield "nearest(stadium, 4000 pts)", lambda k: k.nearest(pts, stadium)[0]
    yield "min_distance(ellipse n=1024, 4000 pts)", lambda k: k.min_distance(pts, ellipse)[0]
    yield "winding(ellipse n=1024, 4000 pts)", lambda k: k.winding(pts, ellipse)
    yield "intersect(ellipse n=1024 pairs)", lambda k: k.intersect(ellipse, pairs, 1e-7)[0]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = backends()
    print(f"backends available: {', '.join(impls)}")
    for name, fn in cases():
        times, outs = {}, {}
        for bname, mod in impls.items():
            times[bname], outs[bname] = _best(lambda: fn(mod), args.repeat)
        line = "  ".join(f"{b}={t * 1e3:8.2f} ms" for b, t in times.items())
        if "compiled" in times:
            same = np.allclose(np.asarray(outs["python"], float), np.asarray(outs["compiled"], float),
                               atol=1e-12, rtol=0)
            line += f"  speedup={times['python'] / times['compiled']:6.1f}x  agree={same}"
        print(f"{name:42s} {line}")


if __name__ == "__main__":
    main()
