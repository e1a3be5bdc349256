"""Command-line front end.

Exit codes: 0 Pass / PassWithWarnings, 1 verification Fail, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import schrodinger1d as sch
from .errors import DegeneracyWarning, PtsymError
from .potential import format_expr, parse_potential
from .report import RunReport, decode_matrix, encode_complex, encode_matrix
from .spectral import (
    DEGENERACY_GAP,
    HERMITICITY_TOL,
    Ordering,
    SpectralDecomposition,
    check_hermitian,
    eigendecompose,
    random_hermitian,
)
from .symmetry import (
    VERIFY_TOL,
    SymmetrySuite,
    chi_norm_signature,
    construct_parity,
    construct_suite,
    involution_residual,
    commutator_residual,
    eigen_action_residual,
    naive_time_reversal_audit,
    residual_bound,
)
from .twolevel import mixing_angle, two_level_decomposition, two_level_energies

POTENTIAL_TOL = 1e-8


class UsageError(PtsymError):
    pass


def _add_suite_checks(report: RunReport, suite: SymmetrySuite, s: SpectralDecomposition, tol: float) -> None:
    h_norm = s.hamiltonian.norm
    for key, value in suite.residuals.items():
        report.check(key, value, residual_bound(key, h_norm, tol))
    ops = {"P": suite.P, "T": suite.T, "PT": suite.PT, "CPT": suite.CPT}
    for label, op in ops.items():
        norm = chi_norm_signature(op, s, label, tol=math.inf)
        report.signatures[label] = list(norm.signature)
        report.check(f"norm_offdiagonal.{label}", norm.off_diagonal_max, tol)
        report.check(f"norm_diagonal.{label}", norm.diagonal_deviation, tol)
    if s.degenerate:
        report.warnings.append(
            f"DegeneracyWarning: minimum eigenvalue gap {s.min_gap:.3e}; P, T and the (-1)^n labels are convention-dependent"
        )


def cmd_demo(a: float, b: float, c: float, tol: float = VERIFY_TOL) -> RunReport:
    report = RunReport("demo", inputs={"a": a, "b": b, "c": c})
    theta = mixing_angle(b, c)
    s = two_level_decomposition(a, b, c)
    suite = construct_suite(s, tol, strict=False)
    report.tolerances = {"verify": tol, "commutator_scale": max(1.0, s.hamiltonian.norm)}
    _add_suite_checks(report, suite, s, tol)
    audit = naive_time_reversal_audit(s.hamiltonian, s)
    e0, e1 = two_level_energies(a, b, c)
    report.details = {
        "theta": theta,
        "energies": [e0, e1],
        "hamiltonian": encode_matrix(s.hamiltonian.matrix),
        "eigenvectors": [[encode_complex(z) for z in s.state(n)] for n in range(2)],
        "P": encode_matrix(suite.P.matrix),
        "T_linear_part": encode_matrix(suite.T.linear_part),
        "PT_linear_part": encode_matrix(suite.PT.linear_part),
        "naive_T_audit": {
            "K0_commutator": audit.k0_commutator,
            "PK0_commutator": audit.pk0_commutator,
            "overlap": encode_complex(audit.overlap),
            "expected_overlap": encode_complex(1j * math.sin(2 * theta)),
        },
    }
    return report


def load_matrix_file(path) -> np.ndarray:
    with open(path) as fh:
        return decode_matrix(json.load(fh))


def cmd_verify_matrix(path, tol: float = VERIFY_TOL, ordering: str = "ascending") -> RunReport:
    report = RunReport("verify-matrix", inputs={"path": str(path), "ordering": ordering})
    h = check_hermitian(load_matrix_file(path), HERMITICITY_TOL)
    report.inputs["dim"] = h.dim
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneracyWarning)
        s = eigendecompose(h, ordering)
    report.tolerances = {
        "verify": tol,
        "hermiticity": HERMITICITY_TOL,
        "degeneracy_gap": DEGENERACY_GAP * max(1.0, h.norm),
        "commutator_scale": max(1.0, h.norm),
    }
    report.check("hermiticity", h.residual, HERMITICITY_TOL)
    _add_suite_checks(report, construct_suite(s, tol, strict=False), s, tol)
    report.details = {"energies": s.values.tolist()}
    return report


def cmd_random_suite(n: int, trials: int, seed: int, tol: float = VERIFY_TOL, ordering: str = "ascending") -> RunReport:
    """Worst-case residuals over seeded random Hermitian matrices.

    Commutator residuals are reported divided by max(1, ||H||) of their trial,
    so every entry is compared with the unscaled ``tol``.
    """
    if n < 2:
        raise UsageError("n must be >= 2")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    report = RunReport("random-suite", inputs={"n": n, "trials": trials, "seed": seed, "ordering": ordering})
    report.tolerances = {"verify": tol, "commutators_scaled_by": "max(1, ||H||)"}
    worst: dict[str, float] = {}
    sig_ok = {"PT": 0, "CPT": 0}
    degenerate = 0
    alternating = [(-1) ** k for k in range(n)]
    for child in np.random.SeedSequence(seed).spawn(trials):
        h = random_hermitian(n, np.random.default_rng(child))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegeneracyWarning)
            s = eigendecompose(h, ordering)
        degenerate += s.degenerate
        suite = construct_suite(s, tol, strict=False)
        scale = max(1.0, h.norm)
        for key, value in suite.residuals.items():
            value = value / scale if key.startswith("commutator") else value
            worst[key] = max(worst.get(key, 0.0), value)
        for label, op in (("P", suite.P), ("T", suite.T), ("PT", suite.PT), ("CPT", suite.CPT)):
            norm = chi_norm_signature(op, s, label, tol=math.inf)
            for sub, val in (("offdiagonal", norm.off_diagonal_max), ("diagonal", norm.diagonal_deviation)):
                worst[f"norm_{sub}.{label}"] = max(worst.get(f"norm_{sub}.{label}", 0.0), val)
            if label == "PT":
                sig_ok["PT"] += list(norm.signature) == alternating
            elif label == "CPT":
                sig_ok["CPT"] += all(x == 1 for x in norm.signature)
    for key, value in worst.items():
        report.check(key, value, tol)
    report.check("signature_mismatch.PT", trials - sig_ok["PT"], 0)
    report.check("signature_mismatch.CPT", trials - sig_ok["CPT"], 0)
    report.signatures = {"PT": alternating, "CPT": [1] * n}
    report.details = {"degenerate_trials": degenerate}
    if degenerate:
        report.warnings.append(f"DegeneracyWarning in {degenerate} of {trials} trials")
    return report


PROBLEM_DEFAULTS = {"xmin": -12.0, "xmax": 12.0, "npoints": 1201, "mass": 1.0, "num_states": 4}


def load_problem(path=None, **overrides) -> dict:
    problem = dict(PROBLEM_DEFAULTS)
    if path is not None:
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("problem file must hold a JSON object")
        problem.update(data)
    problem.update({k: v for k, v in overrides.items() if v is not None})
    if "potential" not in problem:
        raise UsageError("no potential given (problem file field 'potential' or --potential)")
    return problem


def cmd_analyze_potential(
    problem: dict,
    tol: float = POTENTIAL_TOL,
    edge_offset: int = 0,
    floor: float = sch.AMPLITUDE_FLOOR,
) -> RunReport:
    v = parse_potential(problem["potential"])
    grid = sch.Grid1D(float(problem["xmin"]), float(problem["xmax"]), int(problem["npoints"]))
    mass = float(problem["mass"])
    k = int(problem["num_states"])
    report = RunReport(
        "analyze-potential",
        inputs={
            "potential": problem["potential"],
            "parsed": format_expr(v),
            "xmin": grid.xmin,
            "xmax": grid.xmax,
            "npoints": grid.npoints,
            "mass": mass,
            "num_states": k,
            "edge_offset": edge_offset,
        },
    )
    h = sch.discretize(v, grid, mass)
    report.tolerances = {
        "verify": tol,
        "amplitude_floor": floor,
        "commutator_scale": max(1.0, h.norm),
        "degeneracy_gap": DEGENERACY_GAP * max(1.0, h.norm),
    }
    states = sch.solve_bound_states(h, grid, k, edge_offset, floor)
    for st in states:
        report.states.append(
            {
                "n": st.n,
                "energy": st.energy,
                "node_count": st.node_count,
                "classification": st.classification.value,
                "sign_product": st.sign_product,
                "agreement": st.agreement,
            }
        )
        if st.node_count != st.n:
            report.warnings.append(f"state {st.n} has {st.node_count} nodes")
        if st.sign_product is None:
            report.warnings.append(f"state {st.n}: tail sign product indeterminate")
        elif not st.agreement:
            report.warnings.append(f"state {st.n}: sign product disagrees with node parity")
    report.signatures["classification"] = "".join(st.classification.value for st in states)

    symmetric = sch.potential_is_symmetric(v, grid)
    r = sch.reflection_operator(grid) if grid.is_symmetric() else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneracyWarning)
        s = sch.full_spectrum(h, r if symmetric else None)
    p = construct_parity(s)
    signs = (-1.0) ** np.arange(s.dim)
    report.check("involution.P", involution_residual(p), tol)
    report.check("commutator.P", commutator_residual(p, h), residual_bound("commutator", h.norm, tol))
    report.check("eigen_action.P", eigen_action_residual(p, s, signs), tol)
    report.details["symmetric_potential"] = symmetric
    if r is not None:
        distance = sch.compare_parity_to_reflection(p, r)
        if symmetric:
            report.check("parity_minus_reflection", distance, tol)
        else:
            report.details["parity_minus_reflection"] = distance
    if s.degenerate:
        report.warnings.append(
            f"DegeneracyWarning: minimum eigenvalue gap {s.min_gap:.3e} in the full grid spectrum"
        )
    return report


def _common(parser: argparse.ArgumentParser, tol_default: float) -> None:
    parser.add_argument("--tol", type=float, default=tol_default, help="verification tolerance")
    parser.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    parser.add_argument("--output", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptsym", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="two-level illustration H = [[a, b+ic], [b-ic, a]]")
    demo.add_argument("--a", type=float, default=0.0)
    demo.add_argument("--b", type=float, default=1.0)
    demo.add_argument("--c", type=float, default=1.0)
    _common(demo, VERIFY_TOL)

    vm = sub.add_parser("verify-matrix", help="full symmetry suite for a Hermitian matrix file")
    vm.add_argument("path", type=Path)
    vm.add_argument("--ordering", choices=[o.value for o in Ordering], default="ascending")
    _common(vm, VERIFY_TOL)

    ap = sub.add_parser("analyze-potential", help="bound states and E/O classification of V(x)")
    ap.add_argument("problem", type=Path, nargs="?", help="JSON problem file")
    ap.add_argument("--potential")
    ap.add_argument("--xmin", type=float)
    ap.add_argument("--xmax", type=float)
    ap.add_argument("--npoints", type=int)
    ap.add_argument("--mass", type=float)
    ap.add_argument("--num-states", dest="num_states", type=int)
    ap.add_argument("--edge-offset", type=int, default=0)
    ap.add_argument("--floor", type=float, default=sch.AMPLITUDE_FLOOR)
    _common(ap, POTENTIAL_TOL)

    rs = sub.add_parser("random-suite", help="suite over seeded random Hermitian matrices")
    rs.add_argument("--n", type=int, default=4)
    rs.add_argument("--trials", type=int, default=100)
    rs.add_argument("--seed", type=int, default=0)
    rs.add_argument("--ordering", choices=[o.value for o in Ordering], default="ascending")
    _common(rs, VERIFY_TOL)
    return parser


def run(args: argparse.Namespace) -> RunReport:
    if args.command == "demo":
        return cmd_demo(args.a, args.b, args.c, args.tol)
    if args.command == "verify-matrix":
        return cmd_verify_matrix(args.path, args.tol, args.ordering)
    if args.command == "random-suite":
        return cmd_random_suite(args.n, args.trials, args.seed, args.tol, args.ordering)
    problem = load_problem(
        args.problem,
        potential=args.potential,
        xmin=args.xmin,
        xmax=args.xmax,
        npoints=args.npoints,
        mass=args.mass,
        num_states=args.num_states,
    )
    return cmd_analyze_potential(problem, args.tol, args.edge_offset, args.floor)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except (PtsymError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"ptsym {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = report.to_text() if args.pretty else report.to_json()
    if args.output is not None:
        args.output.write_text(text + "\n")
    else:
        print(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
