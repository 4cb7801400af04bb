import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropad.exceptions import (
    BadParametersException,
    DimensionMismatchException,
    LengthMismatchException,
)
from entropad.pauli import (
    PauliMask,
    all_masks,
    commutation_sign,
    conjugate,
    conjugate_many,
    dense_pauli,
    inverse_conjugate,
)
from entropad.qmatrix import DensityOperator
from tests.conftest import random_state


def test_zero_mask_is_identity(rng):
    rho = random_state(2, rng)
    assert np.array_equal(conjugate(rho, PauliMask(2, 0, 0)).matrix, rho.matrix)


def test_bit_flip():
    out = conjugate(DensityOperator.basis_state(1, 0), PauliMask(1, 1, 0))
    assert out == DensityOperator.basis_state(1, 1)


def test_phase_flip_on_plus_state():
    plus = DensityOperator.pure([1, 1])
    minus = DensityOperator.pure([1, -1])
    out = conjugate(plus, PauliMask(1, 0, 1))
    np.testing.assert_allclose(out.matrix, minus.matrix, atol=1e-15)


@pytest.mark.parametrize("n", [1, 2])
def test_conjugation_matches_dense_matrices(n, rng):
    rho = random_state(n, rng)
    for mask in all_masks(n):
        p = dense_pauli(mask)
        expected = p @ rho.matrix @ p.conj().T
        np.testing.assert_allclose(conjugate(rho, mask).matrix, expected, atol=1e-14)


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n=st.integers(min_value=1, max_value=4),
    word=st.integers(min_value=0),
)
@settings(max_examples=50, deadline=None)
def test_inverse_undoes_conjugation_exactly(seed, n, word):
    rho = random_state(n, np.random.default_rng(seed))
    mask = PauliMask.from_word(n, word % (1 << (2 * n)))
    restored = inverse_conjugate(conjugate(rho, mask), mask)
    assert np.array_equal(restored.matrix, rho.matrix)


def test_conjugate_many_matches_single_conjugations(rng):
    rho = random_state(3, rng)
    a_parts = rng.integers(0, 8, size=20)
    b_parts = rng.integers(0, 8, size=20)
    stacked = conjugate_many(rho, a_parts, b_parts)
    for k, (a, b) in enumerate(zip(a_parts, b_parts)):
        single = conjugate(rho, PauliMask(3, int(a), int(b))).matrix
        assert np.array_equal(stacked[k], single)


def test_conjugate_many_length_mismatch(rng):
    with pytest.raises(LengthMismatchException):
        conjugate_many(random_state(1, rng), [0, 1], [0])


def test_mask_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatchException):
        conjugate(random_state(2, rng), PauliMask(1, 1, 1))


def test_mask_parts_must_fit():
    with pytest.raises(BadParametersException):
        PauliMask(1, 2, 0)
    with pytest.raises(BadParametersException):
        PauliMask(0, 0, 0)


def test_word_split_puts_x_part_high():
    mask = PauliMask.from_word(2, 0b1001)
    assert (mask.a, mask.b) == (0b10, 0b01)
    assert mask.word == 0b1001


def test_all_masks_order():
    assert [(m.a, m.b) for m in all_masks(1)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(all_masks(3)) == 64


def test_commutation_sign_examples():
    assert commutation_sign("1", "1") == -1
    assert commutation_sign("10", "01") == 1
    assert commutation_sign("11", "11") == 1
    assert commutation_sign("", "") == 1
    with pytest.raises(LengthMismatchException):
        commutation_sign("1", "10")


def test_commutation_sign_matches_dense_matrices():
    n = 2
    for x in range(4):
        for z in range(4):
            zx = dense_pauli(PauliMask(n, 0, z)) @ dense_pauli(PauliMask(n, x, 0))
            sign = commutation_sign(f"{x:02b}", f"{z:02b}")
            np.testing.assert_allclose(zx, sign * dense_pauli(PauliMask(n, x, z)))
