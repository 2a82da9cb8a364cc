"""Success fraction against kernel size at fixed n, with a monotonicity check.

    python scripts/threshold_sweep.py --n 12 --seeds 30
"""
import argparse

from rainbowmatch.campaign import parse_campaign, run_campaign


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--seeds", type=int, default=30)
    ap.add_argument("--overlap", type=float, default=1.0)
    ap.add_argument("--method", default="greedy_switch")
    args = ap.parse_args()
    kernels = list(range(2 * args.n, 4 * args.n + 1, 4))
    spec = parse_campaign({"suite": "threshold", "grid": [
        {"n": args.n, "kernel": kernels, "method": args.method, "seeds": args.seeds, "overlap": args.overlap}]})
    res = run_campaign(spec)
    fracs = [res.success_fraction(kernel=k) for k in kernels]
    for k, f in zip(kernels, fracs):
        print(f"kernel {k:>3}  {'#' * round(40 * f):<40} {f:.3f}")
    print("monotone" if fracs == sorted(fracs) else "NOT monotone")


if __name__ == "__main__":
    main()
