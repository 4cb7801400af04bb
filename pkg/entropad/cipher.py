"""
The keyed Pauli-mask cipher. A public index i picks a permutation h_i of 2n-bit strings,
the secret key k is mapped to the mask a‖b = h_i(k), and the message is conjugated by
X^a Z^b. The ciphertext is the pair (i, masked state).

Averaged over the key and the index, the ciphertext is block diagonal in the index
register; ChannelOutput keeps the blocks separately and never builds the joint matrix.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict

import numpy as np

from entropad.exceptions import (
    BadIndexException,
    BadKeyException,
    BadParametersException,
    DimensionMismatchException,
)
from entropad.hashfam import KeySpec, PermutationFamily, family_apply, gf_mul_array
from entropad.pauli import PauliMask, conjugate, conjugate_many, inverse_conjugate
from entropad.qmatrix import (
    DensityOperator,
    maximally_mixed,
    purity,
    trace_distance,
)

MAX_QUBITS = 5


class CipherParams:
    """Message width n, the permutation family over 2n bits and the key space."""

    def __init__(self, n: int, family: PermutationFamily, keys: KeySpec):
        if not 1 <= n <= MAX_QUBITS:
            raise BadParametersException(f"Supported message sizes are 1..{MAX_QUBITS}")
        if family.m != 2 * n or keys.m != 2 * n:
            raise BadParametersException(
                f"Family width {family.m} and key width {keys.m} must both be {2 * n}"
            )
        self.n = n
        self.family = family
        self.keys = keys

    @classmethod
    def create(cls, n: int, t_k: int) -> "CipherParams":
        return cls(n, PermutationFamily.for_width(2 * n), KeySpec(t_k, 2 * n))

    @property
    def t_k(self) -> int:
        return self.keys.t_k

    @property
    def index_count(self) -> int:
        return self.family.index_count

    def check_key(self, key: int) -> None:
        if not 0 <= key < self.keys.size:
            raise BadKeyException(f"Key {key} is not a {self.t_k}-bit string")

    def check_index(self, index: int) -> None:
        if not 0 < index <= self.family.index_count:
            raise BadIndexException(
                f"Index {index} is not in 1..{self.family.index_count}"
            )

    def mask(self, key: int, index: int) -> PauliMask:
        """a‖b = h_i(embed(k)); a is the high n bits."""
        self.check_key(key)
        self.check_index(index)
        word = family_apply(self.family, index, self.keys.embed(key))
        return PauliMask.from_word(self.n, word)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, t_k={self.t_k})"


@dataclass(frozen=True)
class Ciphertext:
    index: int
    payload: DensityOperator


@dataclass(frozen=True)
class SecurityParams:
    t: float
    epsilon: float
    t_k: int

    def satisfied_by(self, n: int) -> bool:
        """H∞(K) + t >= n + 2 log(1/ε)."""
        return self.t_k + self.t >= n + 2 * math.log2(1 / self.epsilon) - 1e-12


class ChannelOutput:
    """The key-averaged ciphertext: one block ρ_i per index, ascending."""

    def __init__(self, params: CipherParams, blocks: Dict[int, DensityOperator]):
        if sorted(blocks) != list(params.family.indices()):
            raise BadParametersException("Channel output needs one block per index")
        self.params = params
        self.blocks = {index: blocks[index] for index in sorted(blocks)}

    def __len__(self):
        return len(self.blocks)

    def joint_matrix(self) -> np.ndarray:
        """
        Dense (|I|·2^n)-dimensional block-diagonal matrix Σ_i |i><i| ⊗ ρ_i / |I|. Only
        meant for tiny cross-checks.
        """
        count = len(self.blocks)
        dim = 1 << self.params.n
        joint = np.zeros((count * dim, count * dim), dtype=np.complex128)
        for position, block in enumerate(self.blocks.values()):
            span = slice(position * dim, (position + 1) * dim)
            joint[span, span] = block.matrix / count
        return joint


def _check_state(state: DensityOperator, params: CipherParams) -> None:
    if state.n_qubits != params.n:
        raise DimensionMismatchException(
            f"State on {state.n_qubits} qubits, cipher expects {params.n}"
        )


def encrypt(
    state: DensityOperator, key: int, index: int, params: CipherParams
) -> Ciphertext:
    _check_state(state, params)
    return Ciphertext(index, conjugate(state, params.mask(key, index)))


def decrypt(ct: Ciphertext, key: int, params: CipherParams) -> DensityOperator:
    _check_state(ct.payload, params)
    return inverse_conjugate(ct.payload, params.mask(key, ct.index))


def channel_block(
    state: DensityOperator, index: int, params: CipherParams
) -> DensityOperator:
    """ρ_i = |K|^-1 Σ_k conjugate(ρ, mask(h_i(k))), keys summed in ascending order."""
    _check_state(state, params)
    params.check_index(index)
    words = gf_mul_array(params.family.field, index, params.keys.embedded_keys())
    low = (1 << params.n) - 1
    stacked = conjugate_many(state, words >> params.n, words & low)
    block = stacked.sum(axis=0) / params.keys.size
    return DensityOperator(block, params.n)


def avg_channel(
    state: DensityOperator, params: CipherParams, workers: int = 1
) -> ChannelOutput:
    """
    Exact average over every (index, key) pair. Blocks are independent; with workers > 1
    they are computed on a thread pool and reassembled in index order.
    """
    _check_state(state, params)
    indices = list(params.family.indices())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(
                pool.map(lambda i: channel_block(state, i, params), indices)
            )
    else:
        blocks = [channel_block(state, i, params) for i in indices]
    return ChannelOutput(params, dict(zip(indices, blocks)))


def indist_distance(out: ChannelOutput) -> float:
    """
    Trace distance of the joint ciphertext from the maximally mixed state on the joint
    space, which for a block-diagonal state is the mean per-block distance to I/2^n.
    """
    mixed = maximally_mixed(out.params.n)
    return sum(trace_distance(block, mixed) for block in out.blocks.values()) / len(
        out
    )


def blockwise_distance(out_a: ChannelOutput, out_b: ChannelOutput) -> float:
    """Trace distance between two joint ciphertexts of the same cipher."""
    if out_a.blocks.keys() != out_b.blocks.keys():
        raise DimensionMismatchException("Channel outputs of different ciphers")
    return sum(
        trace_distance(out_a.blocks[i], out_b.blocks[i]) for i in out_a.blocks
    ) / len(out_a)


def joint_purity(out: ChannelOutput) -> float:
    """Tr(E(ρ)²) on the joint space: |I|^-2 Σ_i Tr(ρ_i²)."""
    return sum(purity(block) for block in out.blocks.values()) / len(out) ** 2


def purity_bound(state: DensityOperator, params: CipherParams) -> float:
    """(1/|I|) (Tr(ρ²)/|K| + 2^-n), the upper bound on joint_purity."""
    return (
        purity(state) / params.keys.size + 2.0 ** -params.n
    ) / params.index_count


def implied_epsilon(out: ChannelOutput) -> float:
    """
    √(D·Tr(E(ρ)²) − 1) with D the joint dimension. The joint trace distance to the
    maximally mixed state never exceeds this.
    """
    joint_dim = len(out) * (1 << out.params.n)
    return math.sqrt(max(0.0, joint_dim * joint_purity(out) - 1))


def key_length_required(n: int, t: float, epsilon: float) -> int:
    """⌈n − t + 2 log₂(1/ε)⌉ clamped to [0, 2n]."""
    if n < 1 or not 0 <= t <= n or not 0 < epsilon <= 1:
        raise BadParametersException(
            f"Need n >= 1, 0 <= t <= n and 0 < epsilon <= 1, got {n}, {t}, {epsilon}"
        )
    bits = math.ceil(n - t + 2 * math.log2(1 / epsilon) - 1e-9)
    return min(max(bits, 0), 2 * n)

