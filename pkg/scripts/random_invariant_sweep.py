"""Worst verification residual per matrix size over seeded random Hermitian ensembles."""

from __future__ import annotations

import argparse
import json

from ptsym.cli import cmd_random_suite


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 16, 32, 64, 128])
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", help="also write the summary here")
    args = parser.parse_args()

    summary = {}
    for n in args.sizes:
        report = cmd_random_suite(n, args.trials, args.seed + n)
        worst_key = max(report.residuals, key=report.residuals.get)
        summary[n] = {"verdict": report.verdict, "worst": worst_key, "value": report.residuals[worst_key]}
        print(f"N={n:4d}  {report.verdict:<16} worst {worst_key:<22} {report.residuals[worst_key]:.2e}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(summary, fh, indent=2)


if __name__ == "__main__":
    main()
