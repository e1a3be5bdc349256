"""Generalized parity, time reversal, PT and CPT for Hermitian Hamiltonians."""

from .errors import DegeneracyWarning, NotHermitianError, PtsymError
from .spectral import (
    HermitianMatrix,
    Ordering,
    SpectralDecomposition,
    canonicalize_phases,
    check_hermitian,
    eigendecompose,
    verify_completeness,
    verify_orthonormality,
)
from .symmetry import (
    AntilinearOperator,
    LinearOperator,
    SymmetrySuite,
    chi_inner_product,
    chi_norm_signature,
    commutator_residual,
    compose_pt,
    construct_parity,
    construct_suite,
    construct_time_reversal,
    involution_residual,
    naive_time_reversal_audit,
)

__version__ = "0.1.0"
