"""
Pauli masks X^a Z^b on n qubits, acting by conjugation.

Bit i of a mask (counting from the least significant bit) addresses the tensor factor
whose computational-basis index bit is i, so X^a maps |x> to |x XOR a> and Z^b
multiplies |x> by (-1)^{b.x}. Conjugation is an index shuffle plus sign flips; no
matrix is ever multiplied here, apart from the dense oracle used by the tests.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import List

import numpy as np

from entropad.exceptions import (
    DimensionMismatchException,
    LengthMismatchException,
    BadParametersException,
)
from entropad.qmatrix import DensityOperator, ComplexMatrix
from entropad.util import parity, parity_table


@dataclass(frozen=True)
class PauliMask:
    n_qubits: int
    a: int
    """X part."""
    b: int
    """Z part."""

    def __post_init__(self):
        if self.n_qubits < 1:
            raise BadParametersException("Mask needs at least one qubit")
        limit = 1 << self.n_qubits
        if not (0 <= self.a < limit and 0 <= self.b < limit):
            raise BadParametersException(
                f"Mask parts {self.a}, {self.b} do not fit in {self.n_qubits} bits"
            )

    @classmethod
    def from_word(cls, n_qubits: int, word: int) -> "PauliMask":
        """Split a 2n-bit word a‖b: a is the high n bits, b the low n bits."""
        return cls(n_qubits, word >> n_qubits, word & ((1 << n_qubits) - 1))

    @property
    def word(self) -> int:
        return (self.a << self.n_qubits) | self.b


def _check_mask(rho: DensityOperator, m: PauliMask) -> None:
    if rho.n_qubits != m.n_qubits:
        raise DimensionMismatchException(
            f"Mask on {m.n_qubits} qubits applied to a {rho.n_qubits}-qubit state"
        )


@lru_cache(maxsize=None)
def _xor_grid(n_qubits: int) -> np.ndarray:
    x = np.arange(1 << n_qubits)
    return x[:, None] ^ x[None, :]


def _conjugated(matrix: ComplexMatrix, n_qubits: int, a: int, b: int) -> ComplexMatrix:
    x = np.arange(1 << n_qubits)
    shuffled = matrix[np.ix_(x ^ a, x ^ a)]
    signs = 1 - 2 * parity_table(n_qubits)[_xor_grid(n_qubits) & b].astype(np.int8)
    return shuffled * signs


def conjugate(rho: DensityOperator, m: PauliMask) -> DensityOperator:
    """X^a Z^b ρ Z^b X^a, as out[x,y] = (−1)^{b⊙(x⊕y)} ρ[x⊕a, y⊕a]."""
    _check_mask(rho, m)
    return DensityOperator(
        _conjugated(rho.matrix, m.n_qubits, m.a, m.b), m.n_qubits, validate=False
    )


def inverse_conjugate(rho: DensityOperator, m: PauliMask) -> DensityOperator:
    """
    Conjugation by the adjoint Z^b X^a. The global phase (−1)^{a⊙b} separating it from
    X^a Z^b cancels under conjugation, so this is the same shuffle-and-sign action.
    """
    _check_mask(rho, m)
    return DensityOperator(
        _conjugated(rho.matrix, m.n_qubits, m.a, m.b), m.n_qubits, validate=False
    )


def conjugate_many(rho: DensityOperator, a_parts, b_parts) -> np.ndarray:
    """
    Stack of conjugations of ρ, one per (a, b) pair, shape (len, dim, dim). Element k
    is bit-identical to conjugate(ρ, PauliMask(n, a_k, b_k)).matrix.
    """
    a_parts = np.asarray(a_parts, dtype=np.int64)
    b_parts = np.asarray(b_parts, dtype=np.int64)
    if a_parts.shape != b_parts.shape:
        raise LengthMismatchException("Mask part arrays differ in length")
    n = rho.n_qubits
    x = np.arange(1 << n)
    rows = x[None, :] ^ a_parts[:, None]
    shuffled = rho.matrix[rows[:, :, None], rows[:, None, :]]
    sign_bits = parity_table(n)[_xor_grid(n)[None, :, :] & b_parts[:, None, None]]
    return shuffled * (1 - 2 * sign_bits.astype(np.int8))


def commutation_sign(x_part: str, z_part: str) -> int:
    """
    The sign s with Z^z X^x = s X^x Z^z, i.e. (−1)^{parity(x AND z)}, for bit strings
    given as text ("110").
    """
    if len(x_part) != len(z_part):
        raise LengthMismatchException(
            f"Bit strings of length {len(x_part)} and {len(z_part)}"
        )
    return -1 if parity(int(x_part or "0", 2) & int(z_part or "0", 2)) else 1


def all_masks(n_qubits: int) -> List[PauliMask]:
    """All 4^n masks in ascending a‖b order."""
    return [PauliMask.from_word(n_qubits, w) for w in range(1 << (2 * n_qubits))]


_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_I = np.eye(2, dtype=np.complex128)


def dense_pauli(m: PauliMask) -> ComplexMatrix:
    """
    Explicit matrix of X^a Z^b. The most significant qubit is the leftmost Kronecker
    factor, matching the bit addressing of the index-shuffle form.
    """
    result = np.ones((1, 1), dtype=np.complex128)
    for qubit in reversed(range(m.n_qubits)):
        x = _X if (m.a >> qubit) & 1 else _I
        z = _Z if (m.b >> qubit) & 1 else _I
        result = np.kron(result, x @ z)
    return result
