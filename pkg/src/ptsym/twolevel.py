"""The two-level Hamiltonian H = [[a, b + ic], [b - ic, a]] with closed-form eigenpairs."""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateInputError
from .spectral import HermitianMatrix, Ordering, SpectralDecomposition, check_hermitian, from_explicit


def two_level_hamiltonian(a: float, b: float, c: float) -> HermitianMatrix:
    return check_hermitian([[a, complex(b, c)], [complex(b, -c), a]])


def mixing_angle(b: float, c: float) -> float:
    """theta with b + ic = r e^{i theta}.

    Uses atan2 so that b <= 0 is handled; equals atan(c/b) for b > 0.
    """
    if b == 0 and c == 0:
        raise DegenerateInputError("b = c = 0: the two levels coincide and theta is undefined")
    return math.atan2(c, b)


def two_level_energies(a: float, b: float, c: float) -> tuple[float, float]:
    r = math.hypot(b, c)
    return a + r, a - r


def two_level_decomposition(a: float, b: float, c: float) -> SpectralDecomposition:
    """Eigenpairs psi_{0,1} = (e^{i theta}, +-1)/sqrt(2) with E_{0,1} = a +- r, phases kept explicit."""
    theta = mixing_angle(b, c)
    h = two_level_hamiltonian(a, b, c)
    e = np.exp(1j * theta)
    vectors = np.array([[e, e], [1.0, -1.0]]) / math.sqrt(2.0)
    return from_explicit(h, two_level_energies(a, b, c), vectors, Ordering.PAPER)
