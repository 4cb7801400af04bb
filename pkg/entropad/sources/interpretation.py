"""
Interpretations of a density operator: ensembles {(p_i, σ_i)} mixing to it. This is
the adversary's prior over messages. Also the textual literals the command line uses to
name states and distributions.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from entropad.exceptions import (
    InvalidInterpretationException,
    ParseException,
    EntropadUserException,
)
from entropad.qmatrix import DensityOperator, maximally_mixed
from entropad.sources.base import random_t_source
from entropad.sources.generators import haar_unitary

WEIGHT_TOLERANCE = 1e-12
MIXTURE_TOLERANCE = 1e-10


class Interpretation:
    """
    An ensemble {(p_i, σ_i)} together with the state it interprets. Construction fails
    unless every p_i is positive, the weights sum to one and Σ p_i σ_i reproduces the
    parent entrywise.
    """

    def __init__(
        self,
        parent: DensityOperator,
        components: Sequence[Tuple[float, DensityOperator]],
    ):
        self.parent = parent
        self.components: Tuple[Tuple[float, DensityOperator], ...] = tuple(
            (float(p), sigma) for p, sigma in components
        )
        if not self.components:
            raise InvalidInterpretationException("An interpretation needs components")
        if any(p <= 0 for p, _ in self.components):
            raise InvalidInterpretationException("Component weights must be positive")
        total = sum(p for p, _ in self.components)
        if abs(total - 1) > WEIGHT_TOLERANCE:
            raise InvalidInterpretationException(f"Weights sum to {total:.15g}")
        for _, sigma in self.components:
            if sigma.n_qubits != parent.n_qubits:
                raise InvalidInterpretationException(
                    "Components must live on the same qubits as the parent"
                )
        mixed = sum(p * sigma.matrix for p, sigma in self.components)
        error = float(np.max(np.abs(mixed - parent.matrix)))
        if error > MIXTURE_TOLERANCE:
            raise InvalidInterpretationException(
                f"Components do not mix to the parent (off by {error:.3g})"
            )

    @classmethod
    def from_components(
        cls, components: Sequence[Tuple[float, DensityOperator]]
    ) -> "Interpretation":
        """Interpretation of the mixture the components define."""
        return cls(DensityOperator.mixture(components), components)

    @property
    def weights(self) -> List[float]:
        return [p for p, _ in self.components]

    @property
    def states(self) -> List[DensityOperator]:
        return [sigma for _, sigma in self.components]

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class ComponentBoundReport:
    worst: float
    """max_i p_i · λ_max(σ_i)."""
    bound: float
    passed: bool


def check_component_bound(interp: Interpretation, t: float) -> ComponentBoundReport:
    """Check p_i · λ_max(σ_i) <= 2^-t for every component."""
    worst = max(
        p * float(np.max(np.linalg.eigvalsh(sigma.matrix)))
        for p, sigma in interp.components
    )
    bound = 2.0 ** -t
    return ComponentBoundReport(worst, bound, worst <= bound + WEIGHT_TOLERANCE)


def random_interpretation(
    n: int, t: int, rng: np.random.Generator, count: int = 4
) -> Interpretation:
    """
    A random ensemble of `count` pure states, mixed with the maximally mixed state just
    enough that the parent has min-entropy at least t. The maximally mixed part enters
    as its 2^n computational basis states, so every component is pure.
    """
    dim = 1 << n
    vectors = [haar_unitary(dim, rng)[:, 0] for _ in range(count)]
    weights = rng.dirichlet(np.ones(count))
    pure = [DensityOperator.pure(v) for v in vectors]
    ensemble = DensityOperator.mixture(zip(weights, pure))
    largest = float(np.max(np.linalg.eigvalsh(ensemble.matrix)))
    cap = 2.0 ** -t
    if largest <= cap:
        alpha = 1.0
    else:
        alpha = (cap - 1.0 / dim) / (largest - 1.0 / dim)
    # Shave a little so rounding cannot push the parent over the cap.
    alpha = min(1.0, max(0.0, alpha * (1 - 1e-9)))

    components = [(alpha * w, s) for w, s in zip(weights, pure) if alpha * w > 0]
    if alpha < 1:
        components += [
            ((1 - alpha) / dim, DensityOperator.basis_state(n, x)) for x in range(dim)
        ]
    return Interpretation.from_components(components)


def parse_weights(literal: str) -> List[float]:
    """Comma-separated decimal weights: "0.5,0.25,0.25,0"."""
    try:
        return [float(part) for part in literal.split(",") if part.strip()]
    except ValueError as ex:
        raise ParseException(f"Cannot read weights from '{literal}'") from ex


def parse_state_literal(n: int, literal: str, seed: int = 0) -> DensityOperator:
    """
    Read a state on n qubits from text:
        "3" or "basis:3"          computational basis state |3><3|
        "fourier:1"               the 1st Fourier basis state
        "diag:0.5,0.5,0,0"        diagonal state with those weights
        "0.5,0.25,0.25,0"         same as diag:
        "mixed"                   I / 2^n
        "<generator>:<t>[:seed]"  random_t_source of that kind
    """
    literal = literal.strip()
    kind, _, argument = literal.partition(":")
    dim = 1 << n
    try:
        if literal.isdigit() or kind == "basis":
            index = int(argument if kind == "basis" else literal)
            if not 0 <= index < dim:
                raise ParseException(f"Basis index {index} out of range for {n} qubits")
            return DensityOperator.basis_state(n, index)
        if kind == "fourier":
            k = int(argument)
            x = np.arange(dim)
            return DensityOperator.pure(np.exp(2j * np.pi * k * x / dim))
        if kind == "mixed":
            return maximally_mixed(n)
        if kind == "diag" or (not argument and "," in literal):
            weights = parse_weights(argument if kind == "diag" else literal)
            if len(weights) != dim:
                raise ParseException(f"Expected {dim} weights, got {len(weights)}")
            return DensityOperator.diagonal(weights)
        if argument:
            t_text, _, seed_text = argument.partition(":")
            return random_t_source(
                n, int(t_text), kind, int(seed_text) if seed_text else seed
            )
    except ValueError as ex:
        if isinstance(ex, EntropadUserException):
            raise
        raise ParseException(f"Cannot read a state from '{literal}'") from ex
    raise ParseException(f"Cannot read a state from '{literal}'")