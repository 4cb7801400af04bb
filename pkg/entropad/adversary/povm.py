"""
Measurements the adversary can make on a ciphertext.

The key-averaged ciphertext is block diagonal in the public index, so any measurement
of the joint state acts through its diagonal blocks. An Adversary is therefore a
finite-outcome POVM per index, plus an integer label for each outcome.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Union

import numpy as np

from entropad.exceptions import (
    BadParametersException,
    DimensionMismatchException,
    InvalidStateException,
)
from entropad.qmatrix import ComplexMatrix, DensityOperator, hermitian_eigen
from entropad.sources.generators import haar_unitary

logger = logging.getLogger(__name__)

POVM_TOLERANCE = 1e-10


def positive_projector(matrix: ComplexMatrix) -> ComplexMatrix:
    """Projector onto the span of eigenvectors with eigenvalue >= 0."""
    spectrum = hermitian_eigen(matrix)
    columns = spectrum.eigenvectors[:, spectrum.eigenvalues >= 0]
    return columns @ columns.conj().T


def _inverse_sqrt(matrix: ComplexMatrix) -> ComplexMatrix:
    """S^-1/2 of a positive definite S."""
    spectrum = hermitian_eigen(matrix)
    vectors = spectrum.eigenvectors
    return (vectors / np.sqrt(spectrum.eigenvalues)) @ vectors.conj().T


def _check_pair(rho0: DensityOperator, rho1: DensityOperator) -> None:
    if rho0.dim != rho1.dim:
        raise DimensionMismatchException(
            f"Cannot discriminate states of dimension {rho0.dim} and {rho1.dim}"
        )


def _check_element(element: ComplexMatrix, what: str) -> None:
    if float(np.max(np.abs(element - element.conj().T))) > POVM_TOLERANCE:
        raise InvalidStateException(f"{what} is not Hermitian")
    smallest = float(np.min(np.linalg.eigvalsh(element)))
    if smallest < -POVM_TOLERANCE:
        raise InvalidStateException(f"{what} has negative eigenvalue {smallest:.3g}")


@dataclass(frozen=True, eq=False)
class BinaryPOVM:
    """Two-outcome measurement {A₀, I − A₀}."""

    element0: ComplexMatrix

    def __post_init__(self):
        element = np.array(self.element0, dtype=np.complex128)
        _check_element(element, "POVM element A0")
        _check_element(np.eye(len(element)) - element, "POVM element A1")
        object.__setattr__(self, "element0", element)

    @property
    def element1(self) -> ComplexMatrix:
        return np.eye(len(self.element0), dtype=np.complex128) - self.element0

    @property
    def dim(self) -> int:
        return len(self.element0)

    def outcome0_probability(self, rho: DensityOperator) -> float:
        if rho.dim != self.dim:
            raise DimensionMismatchException(
                f"POVM of dimension {self.dim} applied to dimension {rho.dim}"
            )
        return float(np.clip(np.trace(self.element0 @ rho.matrix).real, 0.0, 1.0))


def helstrom_povm(rho0: DensityOperator, rho1: DensityOperator) -> BinaryPOVM:
    """
    The optimal measurement for telling rho0 from rho1 under equal priors: A₀ projects
    onto the non-negative eigenspace of rho0 − rho1.
    """
    _check_pair(rho0, rho1)
    return BinaryPOVM(positive_projector(rho0.matrix - rho1.matrix))


def exact_win_probability(
    povm: BinaryPOVM, rho0: DensityOperator, rho1: DensityOperator
) -> float:
    """½ Tr(A₀ρ₀) + ½ Tr(A₁ρ₁)."""
    _check_pair(rho0, rho1)
    return 0.5 * povm.outcome0_probability(rho0) + 0.5 * (
        1 - povm.outcome0_probability(rho1)
    )


def simulate_guessing_game(
    povm: BinaryPOVM,
    rho0: DensityOperator,
    rho1: DensityOperator,
    trials: int,
    seed: int,
) -> float:
    """
    Play the guessing game: a fair bit b picks ρ_b, the measurement outcome is drawn
    from its Born distribution and the guess wins when it equals b. Returns the
    empirical win rate.
    """
    if trials < 1:
        raise BadParametersException(f"Need at least one trial, got {trials}")
    _check_pair(rho0, rho1)
    rng = np.random.default_rng(seed)
    outcome0 = np.array(
        [povm.outcome0_probability(rho0), povm.outcome0_probability(rho1)]
    )
    secrets = rng.integers(0, 2, size=trials)
    guesses = np.where(rng.random(trials) < outcome0[secrets], 0, 1)
    rate = float(np.mean(guesses == secrets))
    logger.debug(f"Guessing game over {trials} trials won at rate {rate}")
    return rate


class Adversary:
    """
    A measurement on the ciphertext with integer-labelled outcomes. `elements` is either
    one stack of shape (L, d, d) used for every index, or a mapping from index to such a
    stack. Each stack must be positive and sum to the identity within 1e-10.
    """

    def __init__(
        self,
        elements: Union[np.ndarray, Mapping[int, np.ndarray]],
        labels: Sequence[int],
        name: str = "adversary",
    ):
        self.labels = np.asarray(labels, dtype=np.int64)
        self.name = name
        if isinstance(elements, Mapping):
            self._per_index: Optional[Dict[int, np.ndarray]] = {
                index: self._checked(stack) for index, stack in elements.items()
            }
            self._shared = None
        else:
            self._per_index = None
            self._shared = self._checked(elements)

    def _checked(self, stack) -> np.ndarray:
        stack = np.asarray(stack, dtype=np.complex128)
        if stack.ndim != 3 or stack.shape[0] != len(self.labels):
            raise DimensionMismatchException(
                f"Expected {len(self.labels)} POVM elements, got shape {stack.shape}"
            )
        for position, element in enumerate(stack):
            _check_element(element, f"Element {position} of {self.name}")
        defect = float(np.max(np.abs(stack.sum(axis=0) - np.eye(stack.shape[1]))))
        if defect > POVM_TOLERANCE:
            raise InvalidStateException(
                f"Elements of {self.name} sum to the identity only within {defect:.3g}"
            )
        return stack

    @property
    def output_labels(self) -> frozenset:
        return frozenset(int(label) for label in self.labels)

    def elements_for(self, index: int) -> np.ndarray:
        if self._per_index is None:
            return self._shared
        try:
            return self._per_index[index]
        except KeyError as ex:
            raise BadParametersException(
                f"{self.name} has no measurement for index {index}"
            ) from ex

    def outcome_probabilities(self, block: DensityOperator, index: int) -> np.ndarray:
        """Born probabilities Tr(E_l ρ) of every outcome l."""
        stack = self.elements_for(index)
        if stack.shape[1] != block.dim:
            raise DimensionMismatchException(
                f"{self.name} measures dimension {stack.shape[1]}, got {block.dim}"
            )
        return np.einsum("lxy,yx->l", stack, block.matrix).real

    def relabel(
        self, relabelling: Callable[[int], int], name: str = None
    ) -> "Adversary":
        """The same measurement with every outcome label passed through relabelling."""
        labels = [relabelling(int(label)) for label in self.labels]
        elements = self._shared if self._per_index is None else self._per_index
        return Adversary(elements, labels, name=name or f"relabelled {self.name}")

    @classmethod
    def computational_basis(cls, n: int) -> "Adversary":
        """Measure in the computational basis; outcome x is labelled x."""
        dim = 1 << n
        stack = np.zeros((dim, dim, dim), dtype=np.complex128)
        stack[np.arange(dim), np.arange(dim), np.arange(dim)] = 1
        return cls(stack, range(dim), name="computational basis")

    @classmethod
    def fourier_basis(cls, n: int) -> "Adversary":
        """Measure in the discrete Fourier basis; outcome k is labelled k."""
        dim = 1 << n
        x = np.arange(dim)
        vectors = np.exp(2j * np.pi * np.outer(x, x) / dim) / np.sqrt(dim)
        stack = np.einsum("kx,ky->kxy", vectors, vectors.conj())
        return cls(stack, range(dim), name="Fourier basis")

    @classmethod
    def random_povm(
        cls,
        n: int,
        rng: np.random.Generator,
        outcomes: int = 2,
        labels: Sequence[int] = None,
    ) -> "Adversary":
        """
        Random full-rank POVM: Gram matrices G_l = M_l M_l† of Ginibre matrices,
        normalised as S^-1/2 G_l S^-1/2 with S = Σ G_l. Same measurement on every index.
        """
        dim = 1 << n
        ginibre = rng.standard_normal((outcomes, dim, dim)) + 1j * rng.standard_normal(
            (outcomes, dim, dim)
        )
        grams = ginibre @ ginibre.conj().transpose(0, 2, 1)
        inverse_sqrt = _inverse_sqrt(grams.sum(axis=0))
        stack = inverse_sqrt @ grams @ inverse_sqrt
        stack = (stack + stack.conj().transpose(0, 2, 1)) / 2
        return cls(
            stack,
            range(outcomes) if labels is None else labels,
            name=f"random {outcomes}-outcome POVM",
        )

    @classmethod
    def random_basis(cls, n: int, rng: np.random.Generator) -> "Adversary":
        """Projective measurement in a Haar-random orthonormal basis."""
        u = haar_unitary(1 << n, rng)
        stack = np.einsum("xk,yk->kxy", u, u.conj())
        return cls(stack, range(1 << n), name="random basis")

    @classmethod
    def from_binary_povm(
        cls, povm: BinaryPOVM, labels: Sequence[int] = (0, 1)
    ) -> "Adversary":
        return cls(np.stack([povm.element0, povm.element1]), labels, name="binary POVM")

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, labels={self.labels.tolist()})"
