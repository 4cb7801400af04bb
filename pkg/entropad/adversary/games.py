"""
Entropic-security games. A function f of the message is a table over the components of
an interpretation; the adversary wins when its label equals f(σ_j). The real game shows
it E(σ_j), the ideal game shows it E(ρ) for the same draw of j. Everything is computed
exactly from channel outputs and Born probabilities.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from entropad.adversary.povm import Adversary, helstrom_povm, positive_projector
from entropad.cipher import ChannelOutput, CipherParams, avg_channel
from entropad.exceptions import (
    BadParametersException,
    LabelMismatchException,
    NoWitnessException,
)
from entropad.qmatrix import DensityOperator, maximally_mixed
from entropad.sources.interpretation import Interpretation
from entropad.util import parity

logger = logging.getLogger(__name__)

MAX_OUTPUT_WIDTH = 8
GL_SLACK = 1e-9
RANDOM_ADVERSARIES = 200


class FunctionTable:
    """f(σ_j) for every component j, as integers of `width` bits."""

    def __init__(self, outputs: Sequence[int], width: int = 1):
        if not 1 <= width <= MAX_OUTPUT_WIDTH:
            raise BadParametersException(
                f"Output width must be 1..{MAX_OUTPUT_WIDTH}, got {width}"
            )
        self.outputs = tuple(int(z) for z in outputs)
        self.width = width
        if any(not 0 <= z < 1 << width for z in self.outputs):
            raise BadParametersException(f"Outputs {self.outputs} exceed {width} bits")

    @classmethod
    def parse(cls, literal: str, width: int = None) -> "FunctionTable":
        """Comma separated outputs, "0,1,3,2". Width defaults to the widest value."""
        try:
            outputs = [int(part) for part in literal.split(",") if part.strip()]
        except ValueError as ex:
            raise BadParametersException(
                f"Cannot read a function from '{literal}'"
            ) from ex
        if width is None:
            width = max(1, max(outputs, default=0).bit_length())
        return cls(outputs, width)

    def __len__(self):
        return len(self.outputs)

    def __getitem__(self, component: int) -> int:
        return self.outputs[component]

    @property
    def image(self) -> frozenset:
        return frozenset(self.outputs)

    def inner(self, r: int) -> "FunctionTable":
        """The predicate h_r(j) = r ⊙ f(j), the parity of r AND f(j)."""
        return FunctionTable([parity(r & z) for z in self.outputs], 1)

    def check_total(self, interp: Interpretation) -> None:
        if len(self.outputs) != len(interp):
            raise BadParametersException(
                f"Function has {len(self.outputs)} values for {len(interp)} components"
            )

    def __repr__(self):
        return f"{type(self).__name__}({list(self.outputs)}, width={self.width})"


@dataclass(frozen=True)
class GameResult:
    p_real: float
    p_ideal: float
    gap: float

    @classmethod
    def of(cls, p_real: float, p_ideal: float) -> "GameResult":
        return cls(p_real, p_ideal, abs(p_real - p_ideal))


class GameViews:
    """
    Channel outputs of every component and of the parent, computed once per
    (interpretation, cipher) so that many adversaries can be scored against them.
    """

    def __init__(
        self, interp: Interpretation, params: CipherParams, workers: int = 1
    ):
        self.interp = interp
        self.params = params
        self.components: List[ChannelOutput] = [
            avg_channel(sigma, params, workers) for sigma in interp.states
        ]
        self.parent = avg_channel(interp.parent, params, workers)

    def outcome_tables(self, adversary: Adversary):
        """
        Born probabilities of every outcome: one (|I|, L) array for the ideal view and a
        (components, |I|, L) array for the real views.
        """
        indices = list(self.parent.blocks)

        def table(out: ChannelOutput) -> np.ndarray:
            return np.array(
                [adversary.outcome_probabilities(out.blocks[i], i) for i in indices]
            )

        return np.array([table(out) for out in self.components]), table(self.parent)


def _score(
    real: np.ndarray,
    ideal: np.ndarray,
    labels: np.ndarray,
    f: FunctionTable,
    weights: Sequence[float],
) -> GameResult:
    p_real = 0.0
    p_ideal = 0.0
    for j, weight in enumerate(weights):
        hits = labels == f[j]
        p_real += weight * float(real[j][:, hits].sum(axis=1).mean())
        p_ideal += weight * float(ideal[:, hits].sum(axis=1).mean())
    return GameResult.of(min(1.0, max(0.0, p_real)), min(1.0, max(0.0, p_ideal)))


def _check_labels(adversary: Adversary, f: FunctionTable) -> None:
    missing = f.image - adversary.output_labels
    if missing:
        raise LabelMismatchException(
            f"{adversary.name} never outputs {sorted(missing)}, which f takes"
        )


def strong_security_gap(
    adversary: Adversary,
    f: FunctionTable,
    interp: Interpretation,
    params: CipherParams,
    views: GameViews = None,
) -> GameResult:
    """
    p_real = Σ_j p_j Pr[A(E(σ_j)) = f(j)], p_ideal = Σ_j p_j Pr[A(E(ρ)) = f(j)], both
    averaged uniformly over the index. Pass precomputed views to score several
    adversaries against the same instance.

    :raises LabelMismatchException: if some value of f is not an outcome label of A.
    """
    f.check_total(interp)
    _check_labels(adversary, f)
    if views is None:
        views = GameViews(interp, params)
    real, ideal = views.outcome_tables(adversary)
    return _score(real, ideal, adversary.labels, f, interp.weights)


def max_f(f: FunctionTable, interp: Interpretation) -> float:
    """max_z Pr_j[f(j) = z], the best blind guess."""
    f.check_total(interp)
    mass: Dict[int, float] = {}
    for weight, z in zip(interp.weights, f.outputs):
        mass[z] = mass.get(z, 0.0) + weight
    return max(mass.values())


@dataclass(frozen=True)
class GLReduction:
    r: int
    predicate: FunctionTable
    """h_r = r ⊙ f."""
    gap: float
    """Gap of the predicate adversary r ⊙ A on h_r."""
    function_gap: float
    """Gap of A itself on f."""


def gl_reduce(
    adversary: Adversary,
    f: FunctionTable,
    interp: Interpretation,
    params: CipherParams,
    epsilon: float,
    views: GameViews = None,
) -> GLReduction:
    """
    Turn a function predictor into a predicate predictor. For every non-zero r of f's
    width the adversary's labels are replaced by r ⊙ label and scored against
    h_r = r ⊙ f. The r with the largest gap wins, the smallest r on ties.

    :raises NoWitnessException: if no r reaches epsilon/2. Only possible when A's gap
        on f is below epsilon.
    """
    f.check_total(interp)
    _check_labels(adversary, f)
    if views is None:
        views = GameViews(interp, params)
    real, ideal = views.outcome_tables(adversary)
    function_gap = _score(real, ideal, adversary.labels, f, interp.weights).gap

    best_r, best_gap = 0, -1.0
    for r in range(1, 1 << f.width):
        labels = np.array([parity(r & int(label)) for label in adversary.labels])
        gap = _score(real, ideal, labels, f.inner(r), interp.weights).gap
        logger.debug(f"r={r:0{f.width}b} predicate gap {gap:.6g}")
        if gap > best_gap:
            best_r, best_gap = r, gap

    if best_gap < epsilon / 2 - GL_SLACK:
        raise NoWitnessException(
            f"Best predicate gap {best_gap:.6g} is below {epsilon / 2:.6g} "
            f"(function gap {function_gap:.6g})"
        )
    return GLReduction(best_r, f.inner(best_r), best_gap, function_gap)


def _conditional_states(interp: Interpretation, f: FunctionTable):
    """(prior, state) of the components grouped by value of f, ascending values."""
    groups = {}
    for (weight, sigma), z in zip(interp.components, f.outputs):
        groups.setdefault(z, []).append((weight, sigma))
    result = {}
    for z in sorted(groups):
        prior = sum(w for w, _ in groups[z])
        state = DensityOperator.mixture((w / prior, s) for w, s in groups[z])
        result[z] = (prior, state)
    return result


def helstrom_adversary(
    interp: Interpretation,
    f: FunctionTable,
    params: CipherParams,
) -> Adversary:
    """
    The per-index optimal guess of a binary f: on index i, project onto the non-negative
    eigenspace of r₀E(τ₀)_i − r₁E(τ₁)_i, where τ_b is the state conditioned on f = b
    and r_b its prior. A constant f gets the measurement that always answers its value.
    """
    f.check_total(interp)
    if f.width != 1:
        raise BadParametersException("Helstrom adversaries guess one-bit functions")
    conditional = _conditional_states(interp, f)
    dim = 1 << params.n
    if len(conditional) == 1:
        (z,) = conditional
        stack = np.zeros((2, dim, dim), dtype=np.complex128)
        stack[z] = np.eye(dim)
        return Adversary(stack, (0, 1), name="constant guess")

    (r0, tau0), (r1, tau1) = conditional[0], conditional[1]
    out0, out1 = avg_channel(tau0, params), avg_channel(tau1, params)
    stacks = {}
    for i in out0.blocks:
        weighted = r0 * out0.blocks[i].matrix - r1 * out1.blocks[i].matrix
        element0 = positive_projector(weighted)
        stacks[i] = np.stack([element0, np.eye(dim) - element0])
    return Adversary(stacks, (0, 1), name="Helstrom")


def likelihood_adversary(
    interp: Interpretation, f: FunctionTable, params: CipherParams
) -> Adversary:
    """
    Guess a multi-bit f from a computational-basis measurement: outcome x on index i is
    answered with the value z maximising Σ_{f(j)=z} p_j <x|E(σ_j)_i|x>, the smallest z
    on ties. Labels are every value of f's width.
    """
    f.check_total(interp)
    conditional = _conditional_states(interp, f)
    dim = 1 << params.n
    values = sorted(conditional)
    outputs = [avg_channel(state, params) for _, state in conditional.values()]
    stacks = {}
    for i in outputs[0].blocks:
        likelihood = np.array(
            [
                prior * np.diag(out.blocks[i].matrix).real
                for (prior, _), out in zip(conditional.values(), outputs)
            ]
        )
        guesses = np.array(values)[np.argmax(likelihood, axis=0)]
        stack = np.zeros((1 << f.width, dim, dim), dtype=np.complex128)
        stack[guesses, np.arange(dim), np.arange(dim)] = 1
        stacks[i] = stack
    return Adversary(stacks, range(1 << f.width), name="likelihood")


def adversary_family(
    interp: Interpretation,
    f: FunctionTable,
    params: CipherParams,
    seed: int,
    random_count: int = RANDOM_ADVERSARIES,
) -> List[Adversary]:
    """
    The adversaries the security claims are checked against: the optimal guess for f
    (Helstrom for one bit, likelihood otherwise), for one bit also the Helstrom
    measurement between the parent and I/d, basis measurements folded onto the
    labels of f, and random_count seeded random POVMs.
    """
    n = params.n
    labels = 1 << f.width
    fold = labels - 1
    family = [
        helstrom_adversary(interp, f, params)
        if f.width == 1
        else likelihood_adversary(interp, f, params)
    ]
    if f.width == 1:
        lifted = helstrom_povm(interp.parent, maximally_mixed(n))
        family.append(Adversary.from_binary_povm(lifted))
    for basis in (Adversary.computational_basis(n), Adversary.fourier_basis(n)):
        folded = basis.relabel(lambda x: x & fold)
        if f.image <= folded.output_labels:
            family.append(folded)
    rng = np.random.default_rng(seed)
    family.extend(
        Adversary.random_povm(n, rng, outcomes=labels) for _ in range(random_count)
    )
    return family
