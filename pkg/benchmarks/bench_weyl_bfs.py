"""Time the Weyl-orbit BFS kernel on the compiled and pure-Python backends.

    python3 benchmarks/bench_weyl_bfs.py [TYPE ...] [--repeat N]
"""
import argparse
import time

import numpy as np

from ellimod import _kernels
from ellimod.rootdata import build_root_datum, parse_cartan_types


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["B4", "D5", "F4", "A6", "E6"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.compiled_available():
        print("compiled extension not built; only the Python backend will run")
    print(f"{'type':>6} {'|W|':>9} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name in args.types:
        rd = build_root_datum(parse_cartan_types(name))
        C = np.array(rd.cartan, dtype=np.int64)
        tracked = np.zeros((rd.rank, 0), dtype=np.int64)

        def run(which):
            return _kernels.weyl_bfs(C, tracked, rd.weyl_order, rd.coxeter_bound, force=which)

        tp, outp = _time(lambda: run("python"), args.repeat)
        if _kernels.compiled_available():
            tc, outc = _time(lambda: run("cython"), args.repeat)
            assert all(np.array_equal(a, b) for a, b in zip(outp, outc)), name
            print(f"{name:>6} {rd.weyl_order:>9} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
        else:
            print(f"{name:>6} {rd.weyl_order:>9} {tp:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
