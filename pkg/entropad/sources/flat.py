"""
Decomposition of t-sources into convex combinations of flat t-sources.

A distribution with every weight at most 2^-t lies in the convex hull of the uniform
distributions on 2^t points. The peeling below finds such a combination greedily:
repeatedly take the 2^t heaviest points and remove as much flat mass from them as keeps
the residual a (scaled) t-source.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from entropad.exceptions import (
    BadParametersException,
    EntropadProgramException,
    EntropyTooLowException,
    MassNotNormalizedException,
)
from entropad.qmatrix import DensityOperator, hermitian_eigen

MASS_TOLERANCE = 1e-12
PEEL_STOP = 1e-14
LEFTOVER_LIMIT = 1e-9
RECONSTRUCTION_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class FlatSource:
    t: int
    support: Tuple[int, ...]
    """Sorted indices into the basis, exactly 2^t of them."""
    basis: Optional[np.ndarray] = None
    """Columns are the basis vectors. None means the computational basis."""

    def __post_init__(self):
        if len(self.support) != 1 << self.t or len(set(self.support)) != len(
            self.support
        ):
            raise BadParametersException(
                f"A flat {self.t}-source needs {1 << self.t} distinct support points"
            )

    def distribution(self, size: int) -> np.ndarray:
        weights = np.zeros(size)
        weights[list(self.support)] = 2.0 ** -self.t
        return weights

    def state(self, n_qubits: int) -> DensityOperator:
        dim = 1 << n_qubits
        if self.basis is None:
            return DensityOperator.diagonal(self.distribution(dim))
        columns = self.basis[:, list(self.support)]
        matrix = columns @ columns.conj().T * 2.0 ** -self.t
        return DensityOperator((matrix + matrix.conj().T) / 2, n_qubits)


@dataclass(frozen=True, eq=False)
class FlatDecomposition:
    t: int
    terms: Tuple[Tuple[float, FlatSource], ...]
    size: int
    """Length of the decomposed distribution."""

    def reconstruct(self) -> np.ndarray:
        total = np.zeros(self.size)
        for weight, source in self.terms:
            total += weight * source.distribution(self.size)
        return total

    def states(self, n_qubits: int):
        return [(weight, source.state(n_qubits)) for weight, source in self.terms]


def decompose_flat(weights: Sequence[float], t: int) -> FlatDecomposition:
    """
    Write a distribution with max weight <= 2^-t as Σ q_j · uniform(S_j), |S_j| = 2^t.

    Each step sorts the residual descending (ties by ascending index), takes the top
    T = 2^t points and peels mass w = min(M − T·r_(T+1), T·r_(T)) where M is the
    residual mass. That either empties the T-th point or brings the (T+1)-th up to the
    cap, so there are at most N·T steps.

    :raises EntropyTooLowException: if a weight exceeds 2^-t.
    :raises MassNotNormalizedException: if the weights do not sum to one.
    """
    residual = np.array(weights, dtype=np.float64)
    if t < 0:
        raise BadParametersException(f"Negative entropy {t}")
    if residual.ndim != 1 or (residual < 0).any():
        raise MassNotNormalizedException("Weights must be a list of non-negative reals")
    if abs(residual.sum() - 1) > MASS_TOLERANCE:
        raise MassNotNormalizedException(f"Weights sum to {residual.sum():.15g}")
    flat_size = 1 << t
    cap = 2.0 ** -t
    if len(residual) < flat_size or residual.max() > cap + MASS_TOLERANCE:
        raise EntropyTooLowException(
            f"Largest weight {residual.max():.6g} exceeds 2^-{t} over "
            f"{len(residual)} points"
        )

    terms = []
    max_steps = len(residual) * flat_size + len(residual)
    while (mass := float(residual.sum())) > PEEL_STOP:
        if len(terms) >= max_steps:
            raise EntropadProgramException(
                f"Flat peeling did not finish in {max_steps} steps"
            )
        order = np.lexsort((np.arange(len(residual)), -residual))
        top = order[:flat_size]
        lowest_in = residual[top[-1]]
        highest_out = residual[order[flat_size]] if len(residual) > flat_size else 0.0
        peel = min(mass - flat_size * highest_out, flat_size * lowest_in)
        if peel <= PEEL_STOP:
            # Rounding left the (T+1)-th point a hair above the cap.
            peel = min(mass, flat_size * lowest_in)
        if peel <= PEEL_STOP:
            # Input slack left mass on fewer than 2^t points.
            if not terms or mass > LEFTOVER_LIMIT:
                raise EntropadProgramException(
                    f"Flat peeling is stuck with mass {mass:.3g} left"
                )
            weight, source = terms[-1]
            terms[-1] = (weight + mass, source)
            break
        residual[top] -= peel / flat_size
        residual[np.abs(residual) <= 1e-15] = 0.0
        np.clip(residual, 0.0, None, out=residual)
        terms.append((float(peel), FlatSource(t, tuple(sorted(int(i) for i in top)))))

    return FlatDecomposition(t, tuple(terms), len(residual))


def decompose_state(rho: DensityOperator, t: int) -> FlatDecomposition:
    """
    Flat decomposition of ρ in its own eigenbasis: the spectrum is peeled with
    decompose_flat and every flat source carries ρ's eigenvectors as its basis.
    """
    spectrum = hermitian_eigen(rho.matrix)
    values = np.clip(spectrum.eigenvalues, 0.0, None)
    values = values / values.sum()
    if values.max() > 2.0 ** -t + MASS_TOLERANCE:
        raise EntropyTooLowException(
            f"State has largest eigenvalue {values.max():.6g} > 2^-{t}"
        )
    flat = decompose_flat(values, t)
    terms = tuple(
        (weight, FlatSource(t, source.support, spectrum.eigenvectors))
        for weight, source in flat.terms
    )
    decomposition = FlatDecomposition(t, terms, flat.size)
    rebuilt = sum(
        weight * state.matrix for weight, state in decomposition.states(rho.n_qubits)
    )
    error = float(np.max(np.abs(rebuilt - rho.matrix)))
    if error > RECONSTRUCTION_TOLERANCE:
        raise EntropadProgramException(f"Flat decomposition is off by {error:.3g}")
    return decomposition
