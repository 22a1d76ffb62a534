"""Time the compiled basin kernel against the pure-Python one.

    python benchmarks/bench_kernel.py --size 96 --methods m1,m6 --polys p1,p6

Both backends classify the same grid; the script also checks that their
outputs are identical.
"""

import argparse
import time

import numpy as np

from octaroot import basins


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=96, help="grid side in pixels")
    ap.add_argument("--methods", default="m1,m3,m6")
    ap.add_argument("--polys", default="p1,p4,p6")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args(argv)

    if "compiled" not in basins.BACKENDS:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    grid = basins.GridSpec(-3, 3, -3, 3, args.size, args.size)
    print(f"grid {args.size}x{args.size}, best of {args.repeat}")
    print(f"{'method':<7}{'poly':<6}{'python s':>10}{'compiled s':>12}{'speedup':>10}  identical")
    for m in args.methods.split(","):
        for p in args.polys.split(","):
            tp, fp = _time(lambda: basins.render(m, p, grid, backend="python"), 1)
            tc, fc = _time(lambda: basins.render(m, p, grid, backend="compiled",
                                                 threads=args.threads), args.repeat)
            same = np.array_equal(fp.root_index, fc.root_index) and np.array_equal(fp.iters, fc.iters)
            print(f"{m:<7}{p:<6}{tp:>10.3f}{tc:>12.4f}{tp / tc:>9.0f}x  {same}")


if __name__ == "__main__":
    main()
