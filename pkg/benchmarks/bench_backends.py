"""Compiled vs pure-Python TriSet kernel on random quadratic systems.

    python3 benchmarks/bench_backends.py --n 12 14 --seeds 3
"""

import argparse
import statistics
import time

from boolcs import SolverConfig, bcs, gen_random
from boolcs.backend import HAVE_COMPILED


def _time(system, backend, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        rep = bcs(system, SolverConfig(backend=backend))
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, rep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[10, 12, 14])
    ap.add_argument("--ratio", type=float, default=1.0, help="m = ratio * n")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if not HAVE_COMPILED:
        raise SystemExit("compiled kernel not built; run `pip install --no-build-isolation -e .` first")

    print(f"{'n':>3} {'m':>4} {'branches':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in args.n:
        m = max(1, round(args.ratio * n))
        py_t, c_t, counts = [], [], []
        for seed in range(args.seeds):
            s = gen_random(n, m, 2, seed)
            tp, rp = _time(s, "python", args.repeat)
            tc, rc = _time(s, "compiled", args.repeat)
            if rp.trisets != rc.trisets or rp.branch_count != rc.branch_count:
                raise SystemExit(f"backends disagree on n={n} seed={seed}")
            py_t.append(tp)
            c_t.append(tc)
            counts.append(rc.branch_count)
        tp, tc = statistics.mean(py_t), statistics.mean(c_t)
        print(f"{n:>3} {m:>4} {statistics.mean(counts):>9.0f} {tp:>10.4f} {tc:>11.5f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
