"""Generalized discrete symmetries P, T, PT, C and CPT of a Hermitian Hamiltonian.

Everything is built from the energy eigenbasis:

    P = sum_n (-1)^n psi_n psi_n^H            (linear)
    T = (sum_n psi_n psi_n^T) K0              (antilinear)

An antilinear operator is stored by its linear part ``U`` and acts as
``psi -> U @ conj(psi)``.  C is identified with P, so CPT = P^2 T = T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import CompositionMismatchError, DimensionMismatchError, NormAnomalousError
from .spectral import HermitianMatrix, Ordering, SpectralDecomposition, max_norm

VERIFY_TOL = 1e-10


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LinearOperator:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    antilinear = False

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, psi) -> np.ndarray:
        return self.matrix @ np.asarray(psi)

    def __matmul__(self, other):
        _check_dims(self, other)
        if isinstance(other, AntilinearOperator):
            return AntilinearOperator(self.matrix @ other.linear_part)
        return LinearOperator(self.matrix @ other.matrix)


@dataclass(frozen=True)
class AntilinearOperator:
    linear_part: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "linear_part", _frozen(self.linear_part))

    antilinear = True

    @property
    def dim(self) -> int:
        return self.linear_part.shape[0]

    def apply(self, psi) -> np.ndarray:
        return self.linear_part @ np.conj(np.asarray(psi))

    def __matmul__(self, other):
        # U K0 (L) = U conj(L) K0 ;  U1 K0 U2 K0 = U1 conj(U2)
        _check_dims(self, other)
        if isinstance(other, AntilinearOperator):
            return LinearOperator(self.linear_part @ np.conj(other.linear_part))
        return AntilinearOperator(self.linear_part @ np.conj(other.matrix))


Operator = Union[LinearOperator, AntilinearOperator]


def complex_conjugation(n: int) -> AntilinearOperator:
    """Plain complex conjugation K0 on C^n."""
    return AntilinearOperator(np.eye(n))


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"operator dimensions differ: {a.dim} vs {b.dim}")


def _op_matrix(op: Operator) -> np.ndarray:
    return op.linear_part if op.antilinear else op.matrix


def _alternating(n: int) -> np.ndarray:
    return (-1.0) ** np.arange(n)


def construct_parity(s: SpectralDecomposition) -> LinearOperator:
    v = s.vectors
    return LinearOperator((v * _alternating(v.shape[1])) @ v.conj().T)


def construct_time_reversal(s: SpectralDecomposition) -> AntilinearOperator:
    v = s.vectors
    return AntilinearOperator(v @ v.T)


def involution_residual(op: Operator) -> float:
    """max|op^2 - I|; for U K0 this is max|U conj(U) - I|."""
    sq = op @ op
    return max_norm(sq.matrix - np.eye(op.dim))


def commutator_residual(op: Operator, h: HermitianMatrix) -> float:
    """max|op H - H op| with H treated as a linear operator."""
    hm = h.matrix
    if op.dim != h.dim:
        raise DimensionMismatchError(f"operator dim {op.dim} != Hamiltonian dim {h.dim}")
    if op.antilinear:
        u = op.linear_part
        return max_norm(u @ np.conj(hm) - hm @ u)
    return max_norm(op.matrix @ hm - hm @ op.matrix)


def eigen_action_residual(op: Operator, s: SpectralDecomposition, signs) -> float:
    """max_n ||op psi_n - signs[n] psi_n||_2."""
    v = s.vectors
    image = _op_matrix(op) @ (np.conj(v) if op.antilinear else v)
    return float(np.max(np.linalg.norm(image - v * np.asarray(signs), axis=0)))


def compose_pt(p: LinearOperator, t: AntilinearOperator, tol: float = VERIFY_TOL) -> AntilinearOperator:
    """PT as an antilinear operator, after checking that PT = TP."""
    pt = p @ t
    tp = t @ p
    residual = max_norm(pt.linear_part - tp.linear_part)
    if residual > tol:
        raise CompositionMismatchError(residual, tol)
    return pt


def chi_inner_product(chi: Operator, psi_m, psi_n) -> complex:
    """(chi psi_m)^H psi_n."""
    return complex(np.vdot(chi.apply(psi_m), np.asarray(psi_n)))


def chi_gram(chi: Operator, s: SpectralDecomposition) -> np.ndarray:
    """Matrix G[m, n] = (chi psi_m)^H psi_n over the eigenbasis."""
    v = s.vectors
    images = _op_matrix(chi) @ (np.conj(v) if chi.antilinear else v)
    return images.conj().T @ v


@dataclass(frozen=True)
class NormReport:
    label: str
    diagonal: np.ndarray
    off_diagonal_max: float
    signature: tuple[int, ...]

    @property
    def diagonal_deviation(self) -> float:
        return float(np.max(np.abs(np.abs(self.diagonal) - 1.0)))


def chi_norm_signature(
    chi: Operator, s: SpectralDecomposition, label: str = "", tol: float = VERIFY_TOL
) -> NormReport:
    g = chi_gram(chi, s)
    diag = np.diag(g).copy()
    off = g - np.diag(diag)
    report = NormReport(
        label,
        diag,
        max_norm(off),
        tuple(1 if d.real >= 0 else -1 for d in diag),
    )
    if report.diagonal_deviation > tol:
        raise NormAnomalousError(
            f"{label or 'chi'}-norm magnitude deviates from 1 by {report.diagonal_deviation:.3e}"
        )
    return report


@dataclass(frozen=True)
class SymmetrySuite:
    P: LinearOperator
    T: AntilinearOperator
    PT: AntilinearOperator
    C: LinearOperator
    CPT: AntilinearOperator
    ordering: Ordering
    degenerate: bool
    residuals: dict = field(default_factory=dict)

    def operators(self) -> dict[str, Operator]:
        return {"P": self.P, "T": self.T, "PT": self.PT, "C": self.C, "CPT": self.CPT}

    def eigen_signs(self, n: int) -> dict[str, np.ndarray]:
        alt = _alternating(n)
        ones = np.ones(n)
        return {"P": alt, "T": ones, "PT": alt, "C": alt, "CPT": ones}


def construct_suite(s: SpectralDecomposition, tol: float = VERIFY_TOL, strict: bool = True) -> SymmetrySuite:
    """Build P, T, PT, C = P, CPT = T and record every verification residual.

    Residual keys are ``involution.X``, ``commutator.X``, ``eigen_action.X``
    for X in P, T, PT, C, CPT, plus ``pt_minus_tp``, ``completeness`` and
    ``orthonormality``.  With ``strict=False`` a PT/TP mismatch is only
    recorded, not raised.
    """
    p = construct_parity(s)
    t = construct_time_reversal(s)
    pt = compose_pt(p, t, tol if strict else np.inf)
    c = LinearOperator(p.matrix)
    cpt = c @ pt
    suite = SymmetrySuite(p, t, pt, c, AntilinearOperator(t.linear_part), s.ordering, s.degenerate)
    res = suite.residuals
    v = s.vectors
    res["completeness"] = max_norm(v @ v.conj().T - np.eye(s.dim))
    res["orthonormality"] = max_norm(v.conj().T @ v - np.eye(s.dim))
    res["pt_minus_tp"] = max_norm(pt.linear_part - (t @ p).linear_part)
    res["cpt_minus_t"] = max_norm(cpt.linear_part - t.linear_part)
    signs = suite.eigen_signs(s.dim)
    for name, op in suite.operators().items():
        res[f"involution.{name}"] = involution_residual(op)
        res[f"commutator.{name}"] = commutator_residual(op, s.hamiltonian)
        res[f"eigen_action.{name}"] = eigen_action_residual(op, s, signs[name])
    return suite


def residual_bound(key: str, h_norm: float, tol: float = VERIFY_TOL) -> float:
    """Tolerance governing a residual key; commutator-type keys scale with max(1, ||H||)."""
    if key.startswith("commutator"):
        return tol * max(1.0, h_norm)
    return tol


def norm_signatures(
    suite: SymmetrySuite, s: SpectralDecomposition, tol: float = VERIFY_TOL
) -> dict[str, NormReport]:
    ops = {"P": suite.P, "T": suite.T, "PT": suite.PT, "CPT": suite.CPT}
    return {label: chi_norm_signature(op, s, label, tol) for label, op in ops.items()}


@dataclass(frozen=True)
class NaiveTimeReversalAudit:
    k0_commutator: float
    pk0_commutator: float
    overlap: complex


def naive_time_reversal_audit(h: HermitianMatrix, s: SpectralDecomposition) -> NaiveTimeReversalAudit:
    """Checks the plain T = K0 choice against H.

    The overlap is (P K0 psi_0)^T psi_1 -- transpose, not conjugate transpose.
    """
    p = construct_parity(s)
    k0 = complex_conjugation(h.dim)
    pk0 = p @ k0
    left = pk0.apply(s.state(0))
    overlap = complex(left @ s.state(1)) if s.dim > 1 else 0j
    return NaiveTimeReversalAudit(
        commutator_residual(k0, h), commutator_residual(pk0, h), overlap
    )
