"""Sweep the mixing angle of H = [[a, b+ic], [b-ic, a]] and tabulate P, T, PT and the K0 audit."""

from __future__ import annotations

import argparse
import math

import numpy as np

from ptsym.symmetry import construct_suite, naive_time_reversal_audit
from ptsym.twolevel import two_level_decomposition


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", type=float, default=0.0)
    parser.add_argument("--r", type=float, default=1.0, help="|b + ic|")
    parser.add_argument("--steps", type=int, default=9)
    args = parser.parse_args()

    print(f"{'theta':>8} {'max res':>10} {'[K0,H]':>8} {'overlap':>22} {'i sin 2theta':>14}")
    for theta in np.linspace(0, math.pi, args.steps):
        b, c = args.r * math.cos(theta), args.r * math.sin(theta)
        s = two_level_decomposition(args.a, b, c)
        suite = construct_suite(s)
        audit = naive_time_reversal_audit(s.hamiltonian, s)
        print(
            f"{theta:8.4f} {max(suite.residuals.values()):10.2e} {audit.k0_commutator:8.4f}"
            f" {audit.overlap:22.12f} {math.sin(2 * theta):14.12f}"
        )


if __name__ == "__main__":
    main()
