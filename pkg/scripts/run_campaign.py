"""Run a campaign file and print per-cell success fractions.

    python scripts/run_campaign.py campaigns/dense4n.json --workers 4
"""
import argparse
import json
from pathlib import Path

from rainbowmatch.campaign import parse_campaign, run_campaign


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("campaign")
    ap.add_argument("--out")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    spec = parse_campaign(json.loads(Path(args.campaign).read_text()))
    res = run_campaign(spec, args.workers)
    out = Path(args.out or spec.output or f"results/{spec.suite}.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(res.to_csv())
    for row in res.summaries():
        print(f"n={row['n']:>3} kernel={row['kernel']:>3} {row['method']:<14} success={row['success_fraction']}")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
