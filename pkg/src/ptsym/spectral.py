"""Hermitian matrices and their spectral decompositions.

Eigenvectors are stored as the columns of ``SpectralDecomposition.vectors``;
column ``n`` is the state labelled ``n`` by the chosen ordering.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    ConvergenceError,
    DegeneracyWarning,
    DimensionMismatchError,
    NonFiniteError,
    NotHermitianError,
    ZeroVectorError,
)

HERMITICITY_TOL = 1e-10
RESIDUAL_TOL = 1e-10
DEGENERACY_GAP = 1e-8
PHASE_FLOOR = 1e-8


class Ordering(str, enum.Enum):
    ASCENDING = "ascending"
    # n = 0 is the largest eigenvalue, as in the two-level illustration E_{0,1} = a +- r
    PAPER = "paper"


class PhaseConvention(str, enum.Enum):
    FIRST_COMPONENT_REAL_POSITIVE = "first_component_real_positive"
    EXPLICIT = "explicit"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def as_complex_matrix(m) -> np.ndarray:
    """Validate a square, finite matrix and return it as a complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatchError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("matrix has NaN or infinite entries")
    return a


def max_norm(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


@dataclass(frozen=True)
class HermitianMatrix:
    matrix: np.ndarray
    residual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def norm(self) -> float:
        """Spectral norm (largest |eigenvalue|)."""
        m = self.matrix.real if self.is_real else self.matrix
        return float(np.max(np.abs(np.linalg.eigvalsh(m))))

    @property
    def is_real(self) -> bool:
        return not np.any(self.matrix.imag)


def check_hermitian(m, tol: float = HERMITICITY_TOL) -> HermitianMatrix:
    a = as_complex_matrix(m)
    residual = max_norm(a - a.conj().T)
    if residual > tol:
        raise NotHermitianError(residual, tol)
    return HermitianMatrix(a, residual)


@dataclass(frozen=True)
class SpectralDecomposition:
    hamiltonian: HermitianMatrix
    values: np.ndarray
    vectors: np.ndarray
    ordering: Ordering = Ordering.ASCENDING
    phase_convention: PhaseConvention = PhaseConvention.FIRST_COMPONENT_REAL_POSITIVE
    degenerate: bool = False
    min_gap: float = field(default=np.inf)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=float)))
        object.__setattr__(self, "vectors", _frozen(np.asarray(self.vectors, dtype=complex)))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def state(self, n: int) -> np.ndarray:
        return self.vectors[:, n]

    def eigen_residual(self) -> float:
        """max_n ||H psi_n - E_n psi_n||_2."""
        h = self.hamiltonian.matrix
        r = h @ self.vectors - self.vectors * self.values
        return float(np.max(np.linalg.norm(r, axis=0)))

    def with_vectors(self, vectors, phase_convention=None) -> "SpectralDecomposition":
        return SpectralDecomposition(
            self.hamiltonian,
            self.values,
            vectors,
            self.ordering,
            phase_convention or self.phase_convention,
            self.degenerate,
            self.min_gap,
        )


def degeneracy_threshold(h: HermitianMatrix, gap: float = DEGENERACY_GAP) -> float:
    return gap * max(1.0, h.norm)


def degenerate_clusters(values, threshold: float) -> list[tuple[int, int]]:
    """Half-open index ranges of runs of sorted eigenvalues with gaps below ``threshold``.

    Only runs of length >= 2 are returned.
    """
    values = np.asarray(values)
    clusters = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[i - 1]) >= threshold:
            if i - start >= 2:
                clusters.append((start, i))
            start = i
    return clusters


def jacobi_eigh(a, tol: float = 1e-14, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Returns unsorted ``(values, vectors)`` with ``a @ vectors = vectors * values``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(max_norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary J acting on the (p, q) plane; A <- J^H A J zeroes a[p, q]
                jpp, jpq, jqp, jqq = c, s * phase, -s * np.conj(phase), c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = cp * jpp + cq * jqp
                a[:, q] = cp * jpq + cq * jqq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = np.conj(jpp) * rp + np.conj(jqp) * rq
                a[q, :] = np.conj(jpq) * rp + np.conj(jqq) * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = vp * jpp + vq * jqp
                v[:, q] = vp * jpq + vq * jqq
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def canonicalize_phases(s: SpectralDecomposition, floor: float = PHASE_FLOOR) -> SpectralDecomposition:
    """Rotate each eigenvector so its first significant component is real and positive."""
    return s.with_vectors(
        canonical_phase_vectors(s.vectors, floor), PhaseConvention.FIRST_COMPONENT_REAL_POSITIVE
    )


def canonical_phase_vectors(vectors, floor: float = PHASE_FLOOR) -> np.ndarray:
    vecs = np.array(vectors, dtype=complex)
    if vecs.ndim == 1:
        return canonical_phase_vectors(vecs[:, None], floor)[:, 0]
    for n in range(vecs.shape[1]):
        col = vecs[:, n]
        norm = np.linalg.norm(col)
        if norm <= floor:
            raise ZeroVectorError(f"eigenvector {n} has norm {norm:.3e}")
        k = int(np.argmax(np.abs(col) > floor * norm))
        pivot = abs(col[k])
        vecs[:, n] = col * np.exp(-1j * np.angle(col[k]))
        vecs[k, n] = pivot
    return vecs


def _order(values: np.ndarray, ordering: Ordering) -> np.ndarray:
    idx = np.argsort(values, kind="stable")
    return idx[::-1] if ordering is Ordering.PAPER else idx


def _finalize(h, values, vectors, ordering, convention, residual_tol, gap):
    vals_sorted = np.sort(values)
    threshold = degeneracy_threshold(h, gap)
    gaps = np.diff(vals_sorted)
    min_gap = float(gaps.min()) if gaps.size else np.inf
    degenerate = bool(gaps.size and min_gap < threshold)
    s = SpectralDecomposition(h, values, vectors, ordering, convention, degenerate, min_gap)
    bound = residual_tol * max(1.0, h.norm)
    if s.eigen_residual() > bound:
        raise ConvergenceError(f"eigen residual {s.eigen_residual():.3e} exceeds {bound:.1e}")
    if degenerate:
        warnings.warn(
            f"minimum eigenvalue gap {min_gap:.3e} below {threshold:.3e}",
            DegeneracyWarning,
            stacklevel=3,
        )
    return s


def eigendecompose(
    h: HermitianMatrix,
    ordering: Ordering | str = Ordering.ASCENDING,
    method: str = "lapack",
    residual_tol: float = RESIDUAL_TOL,
    gap: float = DEGENERACY_GAP,
) -> SpectralDecomposition:
    """Diagonalize ``h`` and return canonically phased, ordered eigenpairs.

    ``method`` is ``"lapack"`` (``numpy.linalg.eigh``) or ``"jacobi"``.
    A ``DegeneracyWarning`` is emitted (and ``degenerate`` set) when two
    eigenvalues are closer than ``gap * max(1, ||H||)``.
    """
    ordering = Ordering(ordering)
    if method == "lapack":
        if h.is_real:
            values, vectors = np.linalg.eigh(h.matrix.real)
        else:
            values, vectors = np.linalg.eigh(h.matrix)
    elif method == "jacobi":
        values, vectors = jacobi_eigh(h.matrix)
    else:
        raise ValueError(f"unknown method {method!r}")
    idx = _order(values, ordering)
    vectors = canonical_phase_vectors(vectors[:, idx])
    return _finalize(
        h, values[idx], vectors, ordering, PhaseConvention.FIRST_COMPONENT_REAL_POSITIVE, residual_tol, gap
    )


def from_explicit(
    h: HermitianMatrix,
    values,
    vectors,
    ordering: Ordering | str = Ordering.ASCENDING,
    residual_tol: float = RESIDUAL_TOL,
    gap: float = DEGENERACY_GAP,
) -> SpectralDecomposition:
    """Wrap caller-supplied eigenpairs (phases kept as given) after checking them."""
    vectors = np.asarray(vectors, dtype=complex)
    values = np.asarray(values, dtype=float)
    if vectors.shape != (h.dim, h.dim) or values.shape != (h.dim,):
        raise DimensionMismatchError("explicit eigenpairs do not match the Hamiltonian dimension")
    s = _finalize(h, values, vectors, Ordering(ordering), PhaseConvention.EXPLICIT, residual_tol, gap)
    if verify_orthonormality(s) > residual_tol:
        raise ConvergenceError("explicit eigenvectors are not orthonormal")
    return s


def verify_completeness(s: SpectralDecomposition) -> float:
    """max|sum_n psi_n psi_n^H - I|."""
    v = s.vectors
    return max_norm(v @ v.conj().T - np.eye(v.shape[0]))


def verify_orthonormality(s: SpectralDecomposition) -> float:
    """max|psi_m^H psi_n - delta_mn|."""
    v = s.vectors
    return max_norm(v.conj().T @ v - np.eye(v.shape[1]))


def random_hermitian(n: int, rng: np.random.Generator) -> HermitianMatrix:
    """(A + A^H)/2 with A having independent standard complex normal entries."""
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return HermitianMatrix((a + a.conj().T) / 2.0, 0.0)
