import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ptsym.errors import CompositionMismatchError, DegeneracyWarning, DimensionMismatchError, NormAnomalousError
from ptsym.spectral import (
    HermitianMatrix,
    Ordering,
    PhaseConvention,
    SpectralDecomposition,
    canonicalize_phases,
    check_hermitian,
    eigendecompose,
    random_hermitian,
)
from ptsym.symmetry import (
    AntilinearOperator,
    LinearOperator,
    chi_inner_product,
    chi_norm_signature,
    commutator_residual,
    complex_conjugation,
    compose_pt,
    construct_parity,
    construct_suite,
    construct_time_reversal,
    involution_residual,
    naive_time_reversal_audit,
)
from ptsym.twolevel import mixing_angle, two_level_decomposition, two_level_hamiltonian


def eq19(theta):
    e = np.exp(1j * theta)
    p = np.array([[0, e], [np.conj(e), 0]])
    u = np.diag([e**2, 1])
    pt = np.array([[0, e], [e, 0]])
    return p, u, pt


class TestComposition:
    @given(st.integers(0, 2**32 - 1))
    def test_antilinear_action_rules(self, seed):
        rng = np.random.default_rng(seed)
        m = lambda: rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        a1, a2, lin = AntilinearOperator(m()), AntilinearOperator(m()), LinearOperator(m())
        psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        np.testing.assert_allclose((a1 @ a2).apply(psi), a1.apply(a2.apply(psi)), atol=1e-12)
        np.testing.assert_allclose((lin @ a1).apply(psi), lin.apply(a1.apply(psi)), atol=1e-12)
        np.testing.assert_allclose((a1 @ lin).apply(psi), a1.apply(lin.apply(psi)), atol=1e-12)
        assert not (a1 @ a2).antilinear
        assert (lin @ a1).antilinear and (a1 @ lin).antilinear

    def test_antilinear_is_antilinear(self):
        u = AntilinearOperator(np.array([[1, 2j], [0, 1]]))
        psi = np.array([1 + 1j, 2])
        np.testing.assert_allclose(u.apply(1j * psi), -1j * u.apply(psi))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            LinearOperator(np.eye(2)) @ AntilinearOperator(np.eye(3))


class TestParity:
    def test_diagonal(self):
        s = eigendecompose(check_hermitian(np.diag([1.0, 2.0])))
        np.testing.assert_allclose(construct_parity(s).matrix, np.diag([1, -1]))

    def test_theta_zero(self):
        s = two_level_decomposition(0, 1, 0)
        np.testing.assert_allclose(construct_parity(s).matrix, [[0, 1], [1, 0]], atol=1e-15)

    def test_theta_quarter(self):
        s = two_level_decomposition(0, 1, 1)
        want = np.array([[0, (1 + 1j) / math.sqrt(2)], [(1 - 1j) / math.sqrt(2), 0]])
        np.testing.assert_allclose(construct_parity(s).matrix, want, atol=1e-15)

    def test_hermitian(self):
        s = eigendecompose(random_hermitian(6, np.random.default_rng(1)))
        p = construct_parity(s).matrix
        np.testing.assert_allclose(p, p.conj().T, atol=1e-14)


class TestTimeReversal:
    def test_standard_basis(self):
        s = eigendecompose(check_hermitian(np.diag([1.0, 2.0, 3.0])))
        np.testing.assert_allclose(construct_time_reversal(s).linear_part, np.eye(3))

    @pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 4, 2.0, -1.1])
    def test_explicit_phases(self, theta):
        s = two_level_decomposition(0.5, math.cos(theta), math.sin(theta))
        np.testing.assert_allclose(construct_time_reversal(s).linear_part, eq19(theta)[1], atol=1e-15)

    @pytest.mark.parametrize("theta", [0.3, math.pi / 4, 2.0])
    def test_canonical_phases(self, theta):
        s = canonicalize_phases(two_level_decomposition(0.5, math.cos(theta), math.sin(theta)))
        u = construct_time_reversal(s).linear_part
        np.testing.assert_allclose(u, np.diag([1, np.exp(-2j * theta)]), atol=1e-15)
        np.testing.assert_allclose(u @ np.conj(u), np.eye(2), atol=1e-15)


class TestPT:
    def test_trivial(self):
        pt = compose_pt(LinearOperator(np.diag([1, -1])), AntilinearOperator(np.eye(2)))
        np.testing.assert_array_equal(pt.linear_part, np.diag([1, -1]))

    @pytest.mark.parametrize("theta", [0.0, 0.4, math.pi / 4])
    def test_eq19(self, theta):
        p, u, want = eq19(theta)
        pt = compose_pt(LinearOperator(p), AntilinearOperator(u))
        np.testing.assert_allclose(pt.linear_part, want, atol=1e-15)

    def test_mismatch(self):
        p = LinearOperator(np.diag([1, -1]))
        u = AntilinearOperator(np.array([[0, 1], [1, 0]]))
        with pytest.raises(CompositionMismatchError):
            compose_pt(p, u)


class TestResiduals:
    def test_involution(self):
        assert involution_residual(LinearOperator([[0, 1], [1, 0]])) == 0
        assert involution_residual(AntilinearOperator(np.diag([np.exp(0.8j), 1]))) <= 1e-15
        assert involution_residual(AntilinearOperator(np.diag([2, 1]))) == 3

    def test_commutator_own_h(self):
        h = random_hermitian(5, np.random.default_rng(2))
        s = eigendecompose(h)
        assert commutator_residual(construct_parity(s), h) <= 1e-10

    def test_naive_k0_commutator(self):
        h = two_level_hamiltonian(1, 3, 4)
        assert commutator_residual(complex_conjugation(2), h) == pytest.approx(8, abs=1e-12)

    def test_identity_hamiltonian(self):
        h = check_hermitian(np.eye(3))
        op = AntilinearOperator(random_hermitian(3, np.random.default_rng(0)).matrix)
        assert commutator_residual(op, h) == 0
        assert commutator_residual(LinearOperator(op.linear_part), h) == 0


class TestChiNorms:
    def test_identity(self):
        assert chi_inner_product(LinearOperator(np.eye(2)), [1, 0], [1, 0]) == 1

    def test_pt_eq19(self):
        s = two_level_decomposition(0, 1, 1)
        suite = construct_suite(s)
        assert chi_inner_product(suite.PT, s.state(1), s.state(1)) == pytest.approx(-1, abs=1e-15)
        assert chi_inner_product(suite.PT, s.state(0), s.state(1)) == pytest.approx(0, abs=1e-15)

    def test_signatures(self):
        s = eigendecompose(random_hermitian(5, np.random.default_rng(9)))
        suite = construct_suite(s)
        pt = chi_norm_signature(suite.PT, s, "PT")
        assert pt.signature == (1, -1, 1, -1, 1)
        assert chi_norm_signature(suite.CPT, s, "CPT").signature == (1,) * 5
        p = chi_norm_signature(suite.P, s, "P")
        assert p.signature == pt.signature
        assert p.off_diagonal_max <= 1e-10

    def test_anomalous(self):
        s = eigendecompose(check_hermitian(np.diag([0.0, 1.0])))
        with pytest.raises(NormAnomalousError):
            chi_norm_signature(LinearOperator(np.diag([2.0, 1.0])), s)


class TestSuite:
    def test_diagonal_real(self):
        s = eigendecompose(check_hermitian(np.diag([-1.0, 0.5, 3.0])))
        suite = construct_suite(s)
        np.testing.assert_allclose(suite.P.matrix, np.diag([1, -1, 1]))
        np.testing.assert_array_equal(suite.C.matrix, suite.P.matrix)
        np.testing.assert_allclose(suite.T.linear_part, np.eye(3))
        np.testing.assert_array_equal(suite.CPT.linear_part, suite.T.linear_part)
        np.testing.assert_allclose(suite.PT.linear_part, np.diag([1, -1, 1]))

    @pytest.mark.parametrize("theta", [0.0, 0.25, math.pi / 4, 1.3])
    def test_eq19_family(self, theta):
        suite = construct_suite(two_level_decomposition(2.0, 3 * math.cos(theta), 3 * math.sin(theta)))
        p, u, pt = eq19(theta)
        np.testing.assert_allclose(suite.P.matrix, p, atol=1e-14)
        np.testing.assert_allclose(suite.T.linear_part, u, atol=1e-14)
        np.testing.assert_allclose(suite.PT.linear_part, pt, atol=1e-14)
        assert suite.ordering is Ordering.PAPER

    def test_random_6x6(self):
        h = random_hermitian(6, np.random.default_rng(6))
        suite = construct_suite(eigendecompose(h))
        assert max(suite.residuals.values()) <= 1e-10 * max(1, h.norm)

    def test_degenerate_still_built(self):
        with pytest.warns(DegeneracyWarning):
            s = eigendecompose(check_hermitian(np.eye(4)))
        suite = construct_suite(s)
        assert suite.degenerate
        assert suite.residuals["involution.P"] == 0
        assert suite.residuals["commutator.T"] == 0

    def test_ordering_flips_parity_sign(self):
        h = random_hermitian(4, np.random.default_rng(4))
        up = construct_suite(eigendecompose(h, Ordering.ASCENDING))
        down = construct_suite(eigendecompose(h, Ordering.PAPER))
        # four levels: reversing the labels maps (-1)^n to (-1)^(3-n) = -(-1)^n
        np.testing.assert_allclose(down.P.matrix, -up.P.matrix, atol=1e-12)
        assert max(down.residuals.values()) <= 1e-10 * max(1, h.norm)


@st.composite
def hermitian_and_phases(draw):
    n = draw(st.integers(2, 8))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return random_hermitian(n, rng), np.exp(1j * rng.uniform(0, 2 * np.pi, n))


@given(hermitian_and_phases())
def test_invariants_and_phase_robustness(case):
    h, phases = case
    s = eigendecompose(h)
    suite = construct_suite(s)
    bound = 1e-10 * max(1.0, h.norm)
    assert max(suite.residuals.values()) <= bound

    shifted = s.with_vectors(s.vectors * phases, PhaseConvention.EXPLICIT)
    other = construct_suite(shifted)
    np.testing.assert_allclose(other.P.matrix, suite.P.matrix, atol=1e-12)
    for key, value in suite.residuals.items():
        assert abs(other.residuals[key] - value) <= 1e-12
    for label in ("P", "T", "PT", "CPT"):
        a = chi_norm_signature(getattr(suite, label), s, label)
        b = chi_norm_signature(getattr(other, label), shifted, label)
        assert a.signature == b.signature
        np.testing.assert_allclose(a.diagonal, b.diagonal, atol=1e-12)


class TestNaiveAudit:
    def test_quarter_turn(self):
        s = two_level_decomposition(0, 1, 1)
        audit = naive_time_reversal_audit(s.hamiltonian, s)
        assert audit.overlap == pytest.approx(1j, abs=1e-15)

    def test_real_h(self):
        s = two_level_decomposition(0.3, 1.5, 0)
        audit = naive_time_reversal_audit(s.hamiltonian, s)
        assert audit.k0_commutator == 0
        assert audit.pk0_commutator == pytest.approx(0, abs=1e-15)
        assert audit.overlap == pytest.approx(0, abs=1e-15)

    @pytest.mark.parametrize("ordering", [Ordering.PAPER, Ordering.ASCENDING])
    def test_three_four(self, ordering):
        h = two_level_hamiltonian(1, 3, 4)
        s = two_level_decomposition(1, 3, 4) if ordering is Ordering.PAPER else eigendecompose(h)
        audit = naive_time_reversal_audit(h, s)
        assert audit.k0_commutator == pytest.approx(8, abs=1e-12)
        assert audit.pk0_commutator > 1
        assert audit.overlap == pytest.approx(24j / 25, abs=1e-14)
        assert math.sin(2 * math.atan(4 / 3)) == pytest.approx(24 / 25)

    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5).filter(lambda c: abs(c) > 1e-3))
    def test_family_purely_imaginary(self, a, b, c):
        s = two_level_decomposition(a, b, c)
        audit = naive_time_reversal_audit(s.hamiltonian, s)
        assert audit.overlap.real == pytest.approx(0, abs=1e-12)
        assert audit.overlap.imag == pytest.approx(math.sin(2 * mixing_angle(b, c)), abs=1e-12)
        assert audit.k0_commutator == pytest.approx(2 * abs(c), abs=1e-12)
