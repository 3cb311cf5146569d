"""Matrix-inverse instances AB = I: solve, then check BA = I on every triangular set.

    python3 benchmarks/bench_matrix.py --k 2 3 4 5

Published branch counts for k = 5 and k = 6 are listed below.  Their
variable order is unknown, so only the order of magnitude compares.
k = 6 has 72 variables and runs on the Python kernel.
"""

import argparse
import time

from boolcs import SolverConfig, bcs, gen_matrix_ab, gen_matrix_ba, prem

REFERENCE = {5: 46021, 6: 1271549}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--threshold", default="4")
    args = ap.parse_args()
    t = float("inf") if args.threshold == "inf" else int(args.threshold)

    for k in args.k:
        t0 = time.perf_counter()
        rep = bcs(gen_matrix_ab(k), SolverConfig(threshold=t))
        solve = time.perf_counter() - t0
        t0 = time.perf_counter()
        ok = all(prem(g, a).is_zero for g in gen_matrix_ba(k) for a in rep.trisets)
        check = time.perf_counter() - t0
        line = (f"k={k} branches={rep.branch_count} trisets={len(rep.trisets)} solutions={rep.solution_count} "
                f"solve={solve:.2f}s prem_check={check:.2f}s BA=I:{'yes' if ok else 'NO'}")
        if k in REFERENCE:
            ratio = rep.branch_count / REFERENCE[k]
            line += f" vs_reference={ratio:.2f}x ({'within' if 0.25 <= ratio <= 4 else 'outside'} 4x)"
        print(line, flush=True)


if __name__ == "__main__":
    main()
