"""
Dense complex Hermitian matrices at desk scale (dimension at most 64), and the handful
of spectral quantities everything else is phrased in: trace distance, purity and
min-entropy.
"""
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from entropad.exceptions import (
    DimensionMismatchException,
    InvalidStateException,
    NoConvergenceException,
    NonHermitianException,
)

ComplexMatrix = NDArray[np.complex128]

HERMITIAN_TOLERANCE = 1e-10
STATE_TOLERANCE = 1e-12
PHASE_TOLERANCE = 1e-12


def as_complex_matrix(entries) -> ComplexMatrix:
    """
    Build a square complex matrix from nested rows, or from a flat row-major list of
    dim² entries.
    """
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim == 1:
        dim = math.isqrt(matrix.size)
        if dim * dim != matrix.size:
            raise DimensionMismatchException(
                f"{matrix.size} entries do not form a square matrix"
            )
        matrix = matrix.reshape(dim, dim)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchException(
            f"Matrix of shape {matrix.shape} is not square"
        )
    return matrix


def hermitian_defect(m: ComplexMatrix) -> float:
    """Largest |M[x,y] - conj(M[y,x])|."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending, with orthonormal eigenvector columns in the same
    order."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])


def hermitian_eigen(m: ComplexMatrix) -> Spectrum:
    """
    Eigendecomposition of a Hermitian matrix. Eigenvalues come back descending. Each
    eigenvector is rotated so that its first component of magnitude above 1e-12 is real
    and positive, which makes the output deterministic for non-degenerate spectra.

    :raises NonHermitianException: if m is not Hermitian within 1e-10.
    :raises NoConvergenceException: if LAPACK gives up.
    """
    m = as_complex_matrix(m)
    defect = hermitian_defect(m)
    if defect > HERMITIAN_TOLERANCE:
        raise NonHermitianException(f"Matrix is not Hermitian (defect {defect:.3g})")
    try:
        values, vectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as ex:
        raise NoConvergenceException("Hermitian eigensolver did not converge") from ex

    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    for column in range(vectors.shape[1]):
        v = vectors[:, column]
        nonzero = np.flatnonzero(np.abs(v) > PHASE_TOLERANCE)
        if nonzero.size:
            lead = v[nonzero[0]]
            vectors[:, column] = v * (abs(lead) / lead)
    return Spectrum(values, vectors)


class DensityOperator:
    """
    A Hermitian, positive semidefinite, unit-trace matrix on n_qubits qubits. Instances
    are treated as immutable: the wrapped array is flagged read-only.
    """

    def __init__(self, matrix, n_qubits: int = None, validate: bool = True):
        matrix = as_complex_matrix(matrix)
        dim = matrix.shape[0]
        if n_qubits is None:
            n_qubits = dim.bit_length() - 1
        if dim != 1 << n_qubits:
            raise DimensionMismatchException(
                f"Dimension {dim} does not match {n_qubits} qubits"
            )
        self.n_qubits = n_qubits
        self.matrix = matrix
        self.matrix.flags.writeable = False
        if validate:
            self.validate()

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def validate(self) -> None:
        defect = hermitian_defect(self.matrix)
        if defect > STATE_TOLERANCE:
            raise NonHermitianException(
                f"Density operator is not Hermitian (defect {defect:.3g})"
            )
        trace = np.trace(self.matrix)
        if abs(trace - 1) > STATE_TOLERANCE:
            raise InvalidStateException(f"Density operator has trace {trace:.15g}")
        smallest = float(np.min(np.linalg.eigvalsh(self.matrix)))
        if smallest < -STATE_TOLERANCE:
            raise InvalidStateException(
                f"Density operator has negative eigenvalue {smallest:.3g}"
            )

    @classmethod
    def pure(cls, amplitudes) -> "DensityOperator":
        """|psi><psi| for the normalised amplitude vector."""
        psi = np.asarray(amplitudes, dtype=np.complex128)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "DensityOperator":
        matrix = np.zeros((1 << n_qubits, 1 << n_qubits), dtype=np.complex128)
        matrix[index, index] = 1
        return cls(matrix, n_qubits)

    @classmethod
    def diagonal(cls, weights) -> "DensityOperator":
        return cls(np.diag(np.asarray(weights, dtype=np.complex128)))

    @classmethod
    def mixture(cls, terms) -> "DensityOperator":
        """
        Sum of p * state over (p, state) pairs, in the given order. The result is
        re-symmetrised to absorb rounding in the Hermitian check.
        """
        total = None
        for weight, state in terms:
            part = weight * state.matrix
            total = part if total is None else total + part
        return cls((total + total.conj().T) / 2)

    def spectrum(self) -> Spectrum:
        return hermitian_eigen(self.matrix)

    def __eq__(self, other):
        if isinstance(other, DensityOperator):
            return self.n_qubits == other.n_qubits and np.array_equal(
                self.matrix, other.matrix
            )
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(n_qubits={self.n_qubits})"


def _check_same_dim(rho: DensityOperator, sigma: DensityOperator) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatchException(
            f"Dimension {rho.dim} does not match dimension {sigma.dim}"
        )


def trace_distance(rho: DensityOperator, sigma: DensityOperator) -> float:
    """½ Σ |λ_j(ρ−σ)|."""
    _check_same_dim(rho, sigma)
    difference = rho.matrix - sigma.matrix
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(difference))))


def purity(rho: DensityOperator) -> float:
    """Tr(ρ²), computed as Σ|ρ_xy|² which equals Σ λ_j² for Hermitian ρ."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


def min_entropy(rho: DensityOperator) -> float:
    """−log₂ of the largest eigenvalue, in bits. Never negative."""
    largest = float(np.max(np.linalg.eigvalsh(rho.matrix)))
    return max(0.0, -math.log2(largest))


def maximally_mixed(n_qubits: int) -> DensityOperator:
    """I / 2^n."""
    if n_qubits < 0:
        raise DimensionMismatchException(f"Negative qubit count {n_qubits}")
    dim = 1 << n_qubits
    return DensityOperator(np.eye(dim, dtype=np.complex128) / dim, n_qubits)
