"""Exhaustive kernel-size table for one or two colours.

    python scripts/exhaustive_v.py --n 2 --max-kernel 5
"""
import argparse
import time

from rainbowmatch.formats import dumps_instance
from rainbowmatch.solvers import compute_v_exhaustive


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-kernel", type=int, default=5)
    args = ap.parse_args()
    t = time.perf_counter()
    table = compute_v_exhaustive(args.n, args.max_kernel)
    for r in table.rows:
        print(f"kernel {r.kernel}: {r.verdict} ({r.instances} instances up to relabeling)")
        if r.counterexample is not None:
            print("   ", dumps_instance(r.counterexample), end="")
    print(f"smallest all-solvable kernel: {table.v1}  ({time.perf_counter() - t:.1f}s)")


if __name__ == "__main__":
    main()
