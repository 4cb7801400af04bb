"""
Constructions that turn a predicting adversary into a distinguisher between two
high-entropy states, and the flat-source bound behind them.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from entropad.adversary.games import FunctionTable
from entropad.adversary.povm import Adversary
from entropad.cipher import ChannelOutput, CipherParams, avg_channel, blockwise_distance
from entropad.exceptions import (
    BadParametersException,
    ConstantPredicateException,
    EntropyTooLowException,
    WitnessViolationException,
)
from entropad.qmatrix import DensityOperator, maximally_mixed, min_entropy
from entropad.sources.flat import FlatSource, decompose_flat, decompose_state
from entropad.sources.interpretation import Interpretation

logger = logging.getLogger(__name__)

ENTROPY_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class PredicateWitness:
    r0: float
    r1: float
    tau0: DensityOperator
    """State conditioned on h = 0."""
    tau1: DensityOperator
    tau0_prime: DensityOperator
    """r₀τ₀ + r₁·I/d, a (t−1)-source."""
    rho_prime: DensityOperator
    """r₀ρ + r₁·I/d, a t-source."""
    parent: DensityOperator


def predicate_witness(
    interp: Interpretation, h: FunctionTable, t: float
) -> PredicateWitness:
    """
    Split the interpretation by the predicate h and pad the h = 0 half with the
    maximally mixed state, producing two states of high min-entropy whose ciphertexts a
    good predictor for h must tell apart.

    :raises EntropyTooLowException: if the parent is not a t-source.
    :raises ConstantPredicateException: if h takes one value on every component.
    :raises WitnessViolationException: if a constructed state misses its entropy bound.
    """
    h.check_total(interp)
    if h.width != 1:
        raise BadParametersException("The witness needs a one-bit predicate")
    parent = interp.parent
    n = parent.n_qubits
    if min_entropy(parent) < t - ENTROPY_SLACK:
        raise EntropyTooLowException(
            f"Parent has min-entropy {min_entropy(parent):.6g} < {t}"
        )

    sides = {0: [], 1: []}
    for (weight, sigma), bit in zip(interp.components, h.outputs):
        sides[bit].append((weight, sigma))
    if not sides[0] or not sides[1]:
        raise ConstantPredicateException("The predicate is constant on the support")

    r0 = sum(w for w, _ in sides[0])
    r1 = sum(w for w, _ in sides[1])
    tau0 = DensityOperator.mixture((w / r0, s) for w, s in sides[0])
    tau1 = DensityOperator.mixture((w / r1, s) for w, s in sides[1])
    mixed = maximally_mixed(n)
    tau0_prime = DensityOperator.mixture([(r0, tau0), (r1, mixed)])
    rho_prime = DensityOperator.mixture([(r0, parent), (r1, mixed)])

    if min_entropy(tau0_prime) < t - 1 - ENTROPY_SLACK:
        raise WitnessViolationException(
            f"Padded state has min-entropy {min_entropy(tau0_prime):.6g} < {t - 1}"
        )
    if min_entropy(rho_prime) < t - ENTROPY_SLACK:
        raise WitnessViolationException(
            f"Padded parent has min-entropy {min_entropy(rho_prime):.6g} < {t}"
        )
    return PredicateWitness(r0, r1, tau0, tau1, tau0_prime, rho_prime, parent)


@dataclass(frozen=True)
class WitnessAdvantage:
    direct: float
    """|Tr(A(E(τ₀′) − E(ρ′)))| on the joint space."""
    scaled: float
    """r₀·|Tr(A(E(τ₀) − E(ρ)))|, equal to direct by linearity."""


def _expectation(adversary: Adversary, label: int, out: ChannelOutput) -> float:
    hits = adversary.labels == label
    return float(
        np.mean(
            [
                adversary.outcome_probabilities(block, i)[hits].sum()
                for i, block in out.blocks.items()
            ]
        )
    )


def witness_advantage(
    witness: PredicateWitness, adversary: Adversary, label: int, params: CipherParams
) -> WitnessAdvantage:
    """
    How well the outcome `label` of the adversary separates the padded pair, computed
    both directly and through the unpadded pair.
    """

    def expect(state: DensityOperator) -> float:
        return _expectation(adversary, label, avg_channel(state, params))

    direct = abs(expect(witness.tau0_prime) - expect(witness.rho_prime))
    scaled = witness.r0 * abs(expect(witness.tau0) - expect(witness.parent))
    return WitnessAdvantage(direct, scaled)


@dataclass(frozen=True, eq=False)
class FlatDistinguisherReport:
    t: int
    distance: float
    """Joint trace distance between E(ρ) and E(I/d)."""
    triangle_bound: float
    """Σ p_i q_j ‖E(X_i) − E(Y_j)‖ over the two flat decompositions."""
    worst_pair: Tuple[DensityOperator, DensityOperator]
    """The flat pair (W₀, W₁) whose ciphertexts are furthest apart."""
    worst_distance: float

    @property
    def win_probability(self) -> float:
        """Helstrom success ½ + ½‖E(W₀) − E(W₁)‖ on the worst pair."""
        return 0.5 + 0.5 * self.worst_distance

    @property
    def passed(self) -> bool:
        return self.distance <= self.triangle_bound + 1e-10


def flat_source_distinguisher(
    rho: DensityOperator, t: int, params: CipherParams
) -> FlatDistinguisherReport:
    """
    Write ρ and I/d as convex combinations of flat (t−1)-sources in ρ's eigenbasis and
    compare the ciphertext distance of ρ from I/d with the average pairwise distance of
    the flat parts. The pair with the largest distance is a flat-source distinguisher
    at least as good as the distance between E(ρ) and E(I/d).
    """
    if t < 1:
        raise BadParametersException(f"Flat (t-1)-sources need t >= 1, got {t}")
    n = rho.n_qubits
    flat_t = t - 1
    rho_split = decompose_state(rho, flat_t)
    uniform = decompose_flat(np.full(1 << n, 1.0 / (1 << n)), flat_t)
    basis = rho_split.terms[0][1].basis
    mixed_terms = [
        (weight, FlatSource(flat_t, source.support, basis).state(n))
        for weight, source in uniform.terms
    ]
    rho_terms = rho_split.states(n)

    rho_outputs = [(w, avg_channel(s, params)) for w, s in rho_terms]
    mixed_outputs = [(w, avg_channel(s, params)) for w, s in mixed_terms]
    distance = blockwise_distance(
        avg_channel(rho, params), avg_channel(maximally_mixed(n), params)
    )

    bound = 0.0
    worst = (-1.0, None, None)
    for (p, out_x), (_, state_x) in zip(rho_outputs, rho_terms):
        for (q, out_y), (_, state_y) in zip(mixed_outputs, mixed_terms):
            pair = blockwise_distance(out_x, out_y)
            bound += p * q * pair
            if pair > worst[0]:
                worst = (pair, state_x, state_y)
    logger.debug(
        f"Flat split into {len(rho_terms)} x {len(mixed_terms)} pairs: distance "
        f"{distance:.6g}, bound {bound:.6g}"
    )
    return FlatDistinguisherReport(t, distance, bound, (worst[1], worst[2]), worst[0])
