"""Search for instances without a full rainbow matching and print them as JSON.

    python scripts/find_witnesses.py --n 3 --kernel 8
    python scripts/find_witnesses.py --n 5 --kernel 12 --budget 400000
"""
import argparse
import time

from rainbowmatch.formats import dumps_instance
from rainbowmatch.solvers import falsify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--kernel", type=int, required=True)
    ap.add_argument("--simple", action="store_true")
    ap.add_argument("--budget", type=int, default=200_000)
    ap.add_argument("--seeds", type=int, default=1)
    args = ap.parse_args()
    for seed in range(args.seeds):
        t = time.perf_counter()
        res = falsify(args.n, args.kernel, args.simple, args.budget, seed)
        took = time.perf_counter() - t
        if res.found:
            print(f"# seed {seed}: found after {res.evaluations} evaluations in {took:.1f}s")
            print(dumps_instance(res.instance), end="")
        else:
            print(f"# seed {seed}: nothing after {res.evaluations} evaluations (best count {res.best_score})")


if __name__ == "__main__":
    main()
