import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropad.exceptions import (
    DimensionMismatchException,
    InvalidStateException,
    NonHermitianException,
)
from entropad.qmatrix import (
    DensityOperator,
    as_complex_matrix,
    hermitian_eigen,
    maximally_mixed,
    min_entropy,
    purity,
    trace_distance,
)
from tests.conftest import plus_state, random_state

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


@given(seed=seeds, n=st.integers(min_value=0, max_value=5))
@settings(max_examples=40, deadline=None)
def test_eigen_reconstructs_and_is_orthonormal(seed, n):
    rng = np.random.default_rng(seed)
    m = random_hermitian(1 << n, rng)
    spectrum = hermitian_eigen(m)
    assert np.all(np.diff(spectrum.eigenvalues) <= 1e-12)
    assert np.max(np.abs(spectrum.reconstruct() - m)) <= 1e-10
    v = spectrum.eigenvectors
    assert np.max(np.abs(v.conj().T @ v - np.eye(1 << n))) <= 1e-10


def test_eigen_phase_convention(rng):
    spectrum = hermitian_eigen(random_hermitian(8, rng))
    for column in spectrum.eigenvectors.T:
        lead = column[np.flatnonzero(np.abs(column) > 1e-12)[0]]
        assert abs(lead.imag) <= 1e-12
        assert lead.real > 0


def test_eigen_of_diagonal():
    spectrum = hermitian_eigen(np.diag([0.1, 0.7, 0.2]))
    np.testing.assert_allclose(spectrum.eigenvalues, [0.7, 0.2, 0.1], atol=1e-15)
    assert spectrum.max_eigenvalue == pytest.approx(0.7)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NonHermitianException):
        hermitian_eigen([[0, 1], [0, 0]])


def test_flat_entries_form_square_matrix():
    assert as_complex_matrix([1, 0, 0, 1]).shape == (2, 2)
    with pytest.raises(DimensionMismatchException):
        as_complex_matrix([1, 0, 0])


def test_density_operator_validation():
    with pytest.raises(InvalidStateException):
        DensityOperator([[0.5, 0], [0, 0.4]])
    with pytest.raises(InvalidStateException):
        DensityOperator([[1.5, 0], [0, -0.5]])
    with pytest.raises(NonHermitianException):
        DensityOperator([[0.5, 0.1], [0.3, 0.5]])
    with pytest.raises(DimensionMismatchException):
        DensityOperator(np.eye(3) / 3)


def test_density_operator_is_read_only():
    rho = maximally_mixed(1)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


def test_trace_distance_examples():
    zero = DensityOperator.basis_state(1, 0)
    one = DensityOperator.basis_state(1, 1)
    assert trace_distance(zero, zero) == 0
    assert trace_distance(zero, one) == pytest.approx(1, abs=1e-12)
    assert trace_distance(zero, plus_state()) == pytest.approx(
        math.sqrt(2) / 2, abs=1e-12
    )
    assert trace_distance(zero, maximally_mixed(1)) == pytest.approx(0.5, abs=1e-12)


def test_trace_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatchException):
        trace_distance(maximally_mixed(1), maximally_mixed(2))


@given(seed=seeds, n=st.integers(min_value=1, max_value=3))
@settings(max_examples=30, deadline=None)
def test_trace_distance_is_a_metric(seed, n):
    rng = np.random.default_rng(seed)
    rho, sigma, tau = (random_state(n, rng) for _ in range(3))
    d = trace_distance(rho, sigma)
    assert 0 <= d <= 1 + 1e-12
    assert d == pytest.approx(trace_distance(sigma, rho), abs=1e-12)
    assert d <= trace_distance(rho, tau) + trace_distance(tau, sigma) + 1e-12


def test_purity_examples():
    assert purity(DensityOperator.basis_state(2, 3)) == pytest.approx(1)
    assert purity(maximally_mixed(3)) == pytest.approx(1 / 8)
    assert purity(plus_state()) == pytest.approx(1)


@given(seed=seeds, n=st.integers(min_value=1, max_value=4))
@settings(max_examples=30, deadline=None)
def test_purity_matches_spectrum(seed, n):
    rho = random_state(n, np.random.default_rng(seed))
    eigenvalues = np.linalg.eigvalsh(rho.matrix)
    assert purity(rho) == pytest.approx(float(np.sum(eigenvalues**2)), abs=1e-12)
    assert 1 / rho.dim - 1e-12 <= purity(rho) <= 1 + 1e-12


def test_min_entropy_examples():
    assert min_entropy(maximally_mixed(2)) == pytest.approx(2)
    assert min_entropy(DensityOperator.basis_state(2, 1)) == 0
    assert min_entropy(DensityOperator.diagonal([0.5, 0.25, 0.25, 0])) == pytest.approx(
        1
    )


def test_mixture_and_equality():
    zero = DensityOperator.basis_state(1, 0)
    one = DensityOperator.basis_state(1, 1)
    assert DensityOperator.mixture([(0.5, zero), (0.5, one)]) == maximally_mixed(1)
    assert zero != one
