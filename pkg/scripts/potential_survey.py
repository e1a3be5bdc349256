"""E/O classification and parity-vs-reflection distance for a handful of 1D potentials."""

from __future__ import annotations

import argparse

from ptsym.cli import cmd_analyze_potential, load_problem

POTENTIALS = [
    "0.5*x^2",
    "x^4 - 2*x^2 + 0.3*x",
    "x^4 - 4*x^2",
    "abs(x)",
    "0.5*x^2 + 0.5*tanh(x)",
    "-4*exp(-x^2) + 0.02*x^2 + 0.3*x",
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--npoints", type=int, default=1201)
    parser.add_argument("--num-states", type=int, default=6)
    args = parser.parse_args()

    for text in POTENTIALS:
        report = cmd_analyze_potential(load_problem(potential=text, npoints=args.npoints, num_states=args.num_states))
        nodes = [s["node_count"] for s in report.states]
        agree = all(s["agreement"] for s in report.states if s["sign_product"] is not None)
        distance = report.residuals.get("parity_minus_reflection", report.details.get("parity_minus_reflection"))
        print(
            f"{text:<34} {report.signatures['classification']:<8} nodes={nodes} "
            f"agree={agree} |P-R|={distance:.2e} {report.verdict}"
        )


if __name__ == "__main__":
    main()
