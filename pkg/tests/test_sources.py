import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropad.exceptions import (
    BadParametersException,
    EntropyTooLowException,
    InvalidInterpretationException,
    MassNotNormalizedException,
    ParseException,
)
from entropad.qmatrix import DensityOperator, maximally_mixed, min_entropy
from entropad.sources.base import generator_kinds, random_t_source
from entropad.sources.flat import FlatSource, decompose_flat, decompose_state
from entropad.sources.generators import capped_weights
from entropad.sources.interpretation import (
    Interpretation,
    check_component_bound,
    parse_state_literal,
    parse_weights,
    random_interpretation,
)
from tests.conftest import plus_state

GENERATORS = [
    "adversarial-near-threshold",
    "flat-random-support",
    "random-diagonal",
    "random-unitary-conjugated",
]


def test_generator_kinds_are_registered():
    assert generator_kinds() == GENERATORS


@pytest.mark.parametrize("kind", GENERATORS)
@pytest.mark.parametrize("n,t", [(1, 0), (1, 1), (2, 1), (3, 0), (3, 2), (3, 3)])
def test_generated_states_meet_entropy(kind, n, t):
    for seed in range(5):
        rho = random_t_source(n, t, kind, seed)
        assert rho.n_qubits == n
        assert min_entropy(rho) >= t - 1e-9


@pytest.mark.parametrize("kind", GENERATORS)
def test_generated_states_are_deterministic(kind):
    assert random_t_source(3, 1, kind, 99) == random_t_source(3, 1, kind, 99)


def test_flat_support_is_flat():
    rho = random_t_source(3, 2, "flat-random-support", 4)
    diagonal = np.real(np.diag(rho.matrix))
    assert sorted(diagonal.tolist()) == [0.0] * 4 + [0.25] * 4


def test_threshold_states_sit_on_the_cap():
    rho = random_t_source(3, 1, "adversarial-near-threshold", 11)
    assert min_entropy(rho) == pytest.approx(1, abs=1e-9)


def test_random_t_source_rejects_bad_parameters():
    with pytest.raises(BadParametersException):
        random_t_source(2, 3, "random-diagonal", 0)
    with pytest.raises(BadParametersException):
        random_t_source(2, 1, "no-such-generator", 0)


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    dim=st.integers(min_value=1, max_value=64),
    cap=st.floats(min_value=0.02, max_value=1.0),
)
def test_capped_weights(seed, dim, cap):
    cap = max(cap, 1 / dim)
    weights = capped_weights(dim, cap, np.random.default_rng(seed))
    assert weights.sum() == pytest.approx(1)
    assert weights.min() >= 0
    assert weights.max() <= cap + 1e-12


def test_decompose_two_level_example():
    decomposition = decompose_flat([0.5, 0.25, 0.25, 0], 1)
    assert [(w, s.support) for w, s in decomposition.terms] == [
        (0.5, (0, 1)),
        (0.5, (0, 2)),
    ]


def test_decompose_uniform_is_one_term():
    decomposition = decompose_flat([0.25] * 4, 2)
    assert len(decomposition.terms) == 1
    assert decomposition.terms[0][0] == pytest.approx(1)


def test_decompose_with_zero_entropy():
    decomposition = decompose_flat([0.7, 0.3], 0)
    assert [(round(w, 12), s.support) for w, s in decomposition.terms] == [
        (0.7, (0,)),
        (0.3, (1,)),
    ]


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n=st.integers(min_value=1, max_value=5),
    t=st.integers(min_value=0, max_value=5),
)
@settings(max_examples=60, deadline=None)
def test_decomposition_reconstructs(seed, n, t):
    t = min(t, n)
    weights = capped_weights(1 << n, 2.0**-t, np.random.default_rng(seed))
    decomposition = decompose_flat(weights, t)
    np.testing.assert_allclose(decomposition.reconstruct(), weights, atol=1e-10)
    assert sum(w for w, _ in decomposition.terms) == pytest.approx(1, abs=1e-10)
    assert all(w > 0 for w, _ in decomposition.terms)
    assert len(decomposition.terms) <= (1 << n) * ((1 << t) + 1)
    for _, source in decomposition.terms:
        assert len(source.support) == 1 << t


@pytest.mark.parametrize(
    "weights,t",
    [
        ([0.5 + 1e-13, 0.5 - 1e-13], 1),
        ([0.25, 0.25, 0.25, 0.25 + 5e-13], 2),
        ([0.5 + 5e-13, 0.25, 0.25 - 5e-13, 0], 1),
    ],
)
def test_decompose_within_input_tolerance(weights, t):
    decomposition = decompose_flat(weights, t)
    assert np.max(np.abs(decomposition.reconstruct() - weights)) <= 1e-12
    assert sum(w for w, _ in decomposition.terms) == pytest.approx(1, abs=1e-12)
    assert all(len(s.support) == 1 << t for _, s in decomposition.terms)


def test_decompose_rejects_low_entropy():
    with pytest.raises(EntropyTooLowException):
        decompose_flat([0.6, 0.4], 1)
    with pytest.raises(EntropyTooLowException):
        decompose_flat([0.5, 0.5], 2)


def test_decompose_rejects_unnormalized():
    with pytest.raises(MassNotNormalizedException):
        decompose_flat([0.5, 0.4], 0)
    with pytest.raises(MassNotNormalizedException):
        decompose_flat([-0.1, 1.1], 0)


def test_flat_source_needs_exact_support():
    with pytest.raises(BadParametersException):
        FlatSource(1, (0,))
    with pytest.raises(BadParametersException):
        FlatSource(1, (2, 2))


def test_decompose_state_in_eigenbasis():
    rho = random_t_source(3, 2, "random-unitary-conjugated", 5)
    decomposition = decompose_state(rho, 2)
    rebuilt = sum(w * s.matrix for w, s in decomposition.states(3))
    np.testing.assert_allclose(rebuilt, rho.matrix, atol=1e-10)
    for _, state in decomposition.states(3):
        assert min_entropy(state) == pytest.approx(2, abs=1e-9)


def test_decompose_state_rejects_low_entropy():
    with pytest.raises(EntropyTooLowException):
        decompose_state(plus_state(), 1)


def test_interpretation_validation():
    zero = DensityOperator.basis_state(1, 0)
    one = DensityOperator.basis_state(1, 1)
    mixed = maximally_mixed(1)
    assert len(Interpretation(mixed, [(0.5, zero), (0.5, one)])) == 2
    with pytest.raises(InvalidInterpretationException):
        Interpretation(mixed, [(0.5, zero), (0.4, one)])
    with pytest.raises(InvalidInterpretationException):
        Interpretation(mixed, [(1.0, zero), (0.0, one)])
    with pytest.raises(InvalidInterpretationException):
        Interpretation(mixed, [(0.75, zero), (0.25, one)])
    with pytest.raises(InvalidInterpretationException):
        Interpretation(mixed, [(1.0, maximally_mixed(2))])
    with pytest.raises(InvalidInterpretationException):
        Interpretation(mixed, [])


def test_interpretation_of_mixture():
    interp = Interpretation.from_components(
        [(0.5, plus_state()), (0.5, DensityOperator.basis_state(1, 0))]
    )
    assert interp.weights == [0.5, 0.5]
    assert min_entropy(interp.parent) < 1


@pytest.mark.parametrize("n,t", [(1, 1), (2, 1), (3, 2)])
def test_random_interpretation_keeps_entropy(n, t, rng):
    interp = random_interpretation(n, t, rng, count=3)
    assert min_entropy(interp.parent) >= t - 1e-9
    report = check_component_bound(interp, t)
    assert report.passed
    assert report.worst <= report.bound + 1e-12


def test_component_bound_fails_on_heavy_component():
    zero = DensityOperator.basis_state(1, 0)
    interp = Interpretation.from_components([(0.75, zero), (0.25, maximally_mixed(1))])
    assert not check_component_bound(interp, 1).passed


def test_parse_weights():
    assert parse_weights("0.5,0.25, 0.25,0") == [0.5, 0.25, 0.25, 0.0]
    with pytest.raises(ParseException):
        parse_weights("0.5,half")


def test_parse_state_literals():
    assert parse_state_literal(2, "3") == DensityOperator.basis_state(2, 3)
    assert parse_state_literal(2, "basis:1") == DensityOperator.basis_state(2, 1)
    assert parse_state_literal(2, "mixed") == maximally_mixed(2)
    assert parse_state_literal(1, "0.5,0.5") == maximally_mixed(1)
    assert parse_state_literal(1, "diag:1,0") == DensityOperator.basis_state(1, 0)
    np.testing.assert_allclose(
        parse_state_literal(1, "fourier:0").matrix, plus_state().matrix, atol=1e-15
    )
    seeded = parse_state_literal(2, "random-diagonal:1:7")
    assert seeded == random_t_source(2, 1, "random-diagonal", 7)


@pytest.mark.parametrize(
    "literal", ["basis:4", "basis:x", "diag:0.5", "bogus", "fourier:"]
)
def test_parse_state_literal_errors(literal):
    with pytest.raises(ParseException):
        parse_state_literal(2, literal)


def test_parse_state_literal_unknown_generator():
    with pytest.raises(BadParametersException):
        parse_state_literal(2, "nope:1")
