"""Bound states of H = p^2/(2m) + V(x) on a uniform grid (hbar = 1).

The grid samples ``x_0 .. x_{N-1}`` carry the wavefunction; it is pinned to
zero one spacing outside each end (Dirichlet), giving the three-point
tridiagonal Hamiltonian

    H_ii = 1/(m dx^2) + V(x_i),    H_{i,i+1} = -1/(2 m dx^2).

Bound states are classified E-type (even node count) or O-type (odd node
count); the sign of psi(left tail) * psi(right tail) is kept as a cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import AllBelowFloorError, AsymmetricGridError, DimensionMismatchError, EvaluationError
from .potential import Expr, evaluate
from .spectral import (
    HermitianMatrix,
    Ordering,
    PhaseConvention,
    SpectralDecomposition,
    degeneracy_threshold,
    degenerate_clusters,
    eigendecompose,
    max_norm,
)
from .symmetry import LinearOperator

AMPLITUDE_FLOOR = 1e-6


@dataclass(frozen=True)
class Grid1D:
    xmin: float = -12.0
    xmax: float = 12.0
    npoints: int = 1201

    def __post_init__(self):
        if not self.xmin < self.xmax:
            raise ValueError(f"need xmin < xmax, got [{self.xmin}, {self.xmax}]")
        if self.npoints < 3:
            raise ValueError("need at least 3 grid points")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.npoints)

    @property
    def spacing(self) -> float:
        return (self.xmax - self.xmin) / (self.npoints - 1)

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return abs(self.xmin + self.xmax) <= tol * max(1.0, abs(self.xmax))


class Classification(str, enum.Enum):
    E_TYPE = "E"
    O_TYPE = "O"


@dataclass(frozen=True)
class BoundState:
    n: int
    energy: float
    amplitudes: np.ndarray
    node_count: int
    sign_product: int | None  # +1, -1, or None when indeterminate
    classification: Classification
    agreement: bool


def sample_potential(v: Expr, grid: Grid1D) -> np.ndarray:
    values = np.broadcast_to(evaluate(v, grid.x), (grid.npoints,)).astype(float)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(f"potential is not finite at x = {grid.x[i]:.6g}")
    return values


def tridiagonal(v: Expr, grid: Grid1D, mass: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the discretized Hamiltonian."""
    if mass <= 0:
        raise ValueError("mass must be positive")
    kin = 1.0 / (mass * grid.spacing**2)
    diag = kin + sample_potential(v, grid)
    off = np.full(grid.npoints - 1, -0.5 * kin)
    return diag, off


def discretize(v: Expr, grid: Grid1D, mass: float = 1.0) -> HermitianMatrix:
    diag, off = tridiagonal(v, grid, mass)
    h = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    return HermitianMatrix(h.astype(complex), 0.0)


def _tridiagonal_of(h: HermitianMatrix) -> tuple[np.ndarray, np.ndarray]:
    m = h.matrix.real
    return np.diag(m).copy(), np.diag(m, 1).copy()


def fix_sign(psi, floor: float = AMPLITUDE_FLOOR) -> np.ndarray:
    """Flip ``psi`` so its first sample above ``floor * max|psi|`` is positive."""
    psi = np.asarray(psi, dtype=float)
    big = np.abs(psi) > floor * np.max(np.abs(psi))
    first = psi[np.argmax(big)]
    return psi if first > 0 else -psi


def _significant(psi, floor: float) -> np.ndarray:
    psi = np.asarray(psi, dtype=float)
    peak = np.max(np.abs(psi)) if psi.size else 0.0
    idx = np.flatnonzero(np.abs(psi) > floor * peak)
    if peak == 0.0 or idx.size == 0:
        raise AllBelowFloorError("no sample exceeds the amplitude floor")
    return idx


def count_nodes(psi, floor: float = AMPLITUDE_FLOOR) -> int:
    """Sign changes along the samples with |psi| > floor * max|psi|.

    Sub-floor samples are skipped rather than breaking the comparison, so a
    node that falls on a near-zero sample is still counted once.
    """
    idx = _significant(psi, floor)
    signs = np.sign(np.asarray(psi, dtype=float)[idx])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def tail_sign_product(psi, edge_offset: int = 0, floor: float = AMPLITUDE_FLOOR) -> int | None:
    """sign(psi_left * psi_right) at the outermost significant samples.

    ``edge_offset`` moves each station that many samples further inward.
    Returns None if a station lands on a sub-floor sample.
    """
    psi = np.asarray(psi, dtype=float)
    idx = _significant(psi, floor)
    left, right = idx[0] + edge_offset, idx[-1] - edge_offset
    if left >= right:
        return None
    cut = floor * np.max(np.abs(psi))
    if abs(psi[left]) <= cut or abs(psi[right]) <= cut:
        return None
    return 1 if psi[left] * psi[right] > 0 else -1


def classify_state(
    psi, grid: Grid1D | None = None, edge_offset: int = 0, floor: float = AMPLITUDE_FLOOR
) -> tuple[Classification, int | None, bool]:
    """Returns (classification, sign product, agreement).

    Node parity decides the classification; agreement is False when the
    tail sign product is indeterminate or disagrees with it.
    """
    if grid is not None and len(psi) != grid.npoints:
        raise DimensionMismatchError("state does not live on this grid")
    nodes = count_nodes(psi, floor)
    cls = Classification.E_TYPE if nodes % 2 == 0 else Classification.O_TYPE
    sign = tail_sign_product(psi, edge_offset, floor)
    agreement = sign is not None and ((sign > 0) == (nodes % 2 == 0))
    return cls, sign, agreement


def solve_bound_states(
    h: HermitianMatrix,
    grid: Grid1D,
    k: int,
    edge_offset: int = 0,
    floor: float = AMPLITUDE_FLOOR,
) -> list[BoundState]:
    """The ``k`` lowest eigenstates of a discretized Hamiltonian, classified."""
    if h.dim != grid.npoints:
        raise DimensionMismatchError(f"Hamiltonian dim {h.dim} != npoints {grid.npoints}")
    if not 1 <= k <= grid.npoints:
        raise ValueError(f"k must be in [1, {grid.npoints}]")
    diag, off = _tridiagonal_of(h)
    energies, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    states = []
    for n in range(k):
        psi = fix_sign(vecs[:, n] / np.linalg.norm(vecs[:, n]), floor)
        cls, sign, agree = classify_state(psi, grid, edge_offset, floor)
        states.append(BoundState(n, float(energies[n]), psi, count_nodes(psi, floor), sign, cls, agree))
    return states


def reflection_operator(grid: Grid1D, tol: float = 1e-12) -> LinearOperator:
    """The x -> -x permutation on a grid symmetric about zero."""
    if not grid.is_symmetric(tol):
        raise AsymmetricGridError(f"grid [{grid.xmin}, {grid.xmax}] is not symmetric about 0")
    return LinearOperator(np.eye(grid.npoints)[::-1])


def potential_is_symmetric(v: Expr, grid: Grid1D, tol: float = 1e-12) -> bool:
    if not grid.is_symmetric(tol):
        return False
    values = sample_potential(v, grid)
    return max_norm(values - values[::-1]) <= tol * max(1.0, max_norm(values))


def full_spectrum(h: HermitianMatrix, reflection: LinearOperator | None = None) -> SpectralDecomposition:
    """All eigenpairs of a discretized Hamiltonian, ascending, real sign-fixed vectors.

    With ``reflection`` given (H must commute with it), eigenvalue clusters
    the solver cannot separate are re-resolved into reflection eigenvectors.
    An unreduced persymmetric tridiagonal matrix has simple eigenvalues whose
    eigenvectors alternate even/odd in energy order, so within a cluster the
    even vectors take the even positions and the odd vectors the odd ones.
    """
    s = eigendecompose(h, Ordering.ASCENDING)
    vecs = np.real(s.vectors).copy()
    if reflection is not None:
        r = np.real(reflection.matrix)
        for start, stop in degenerate_clusters(s.values, degeneracy_threshold(h)):
            block = vecs[:, start:stop]
            par, rot = np.linalg.eigh(block.T @ r @ block)
            rotated = block @ rot
            even = [j for j in range(stop - start) if par[j] > 0]
            odd = [j for j in range(stop - start) if par[j] <= 0]
            slots_even = [j for j in range(stop - start) if (start + j) % 2 == 0]
            if len(even) != len(slots_even):
                continue
            order = iter(even), iter(odd)
            for j in range(stop - start):
                vecs[:, start + j] = rotated[:, next(order[(start + j) % 2])]
    vecs = np.column_stack([fix_sign(vecs[:, n]) for n in range(vecs.shape[1])])
    return SpectralDecomposition(
        h, s.values, vecs, s.ordering, PhaseConvention.EXPLICIT, s.degenerate, s.min_gap
    )


def compare_parity_to_reflection(p: LinearOperator, r: LinearOperator) -> float:
    if p.dim != r.dim:
        raise DimensionMismatchError(f"P has dim {p.dim}, R has dim {r.dim}")
    return max_norm(p.matrix - r.matrix)
