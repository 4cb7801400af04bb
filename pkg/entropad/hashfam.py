"""
Strongly-XOR-universal permutation families over m-bit strings, realised as
multiplication in GF(2^m): h_i(x) = i·x for every non-zero field element i.

Field elements are plain Python ints whose bit j is the coefficient of x^j. Scalar
arithmetic stays in exact integers; the array variant exists so that exhaustive
verification and channel averaging do not loop in Python per element.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

import numpy as np

from entropad.exceptions import (
    BadParametersException,
    DomainTooLargeException,
    EntropadProgramException,
    ZeroIndexException,
)

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_WIDTH = 12

DEFAULT_MODULI: Dict[int, int] = {
    2: 0b111,  # x^2 + x + 1
    4: 0b10011,  # x^4 + x + 1
    6: 0b1000011,  # x^6 + x + 1
    8: 0b100011011,  # x^8 + x^4 + x^3 + x + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
    12: 0b1000001010011,  # x^12 + x^6 + x^4 + x + 1
}


def poly_mod(value: int, modulus: int) -> int:
    """Remainder of carry-less division of value by modulus."""
    degree = modulus.bit_length() - 1
    while value.bit_length() - 1 >= degree:
        value ^= modulus << (value.bit_length() - 1 - degree)
    return value


def is_irreducible(modulus: int) -> bool:
    """Exhaustive trial division by every polynomial of degree 1..m/2."""
    degree = modulus.bit_length() - 1
    if degree < 1:
        return False
    for divisor in range(2, 1 << (degree // 2 + 1)):
        if poly_mod(modulus, divisor) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldGF2m:
    m: int
    modulus: int

    def __post_init__(self):
        if self.m < 1 or self.modulus.bit_length() - 1 != self.m:
            raise BadParametersException(
                f"Modulus {self.modulus:#b} does not have degree {self.m}"
            )
        if self.m <= MAX_EXHAUSTIVE_WIDTH and not is_irreducible(self.modulus):
            raise EntropadProgramException(
                f"Modulus {self.modulus:#b} is reducible over GF(2)"
            )

    @classmethod
    def for_width(cls, m: int) -> "FieldGF2m":
        """
        The field of the fixed table modulus for m, or the smallest irreducible
        polynomial of degree m when the table has no entry.
        """
        if m in DEFAULT_MODULI:
            return cls(m, DEFAULT_MODULI[m])
        if m < 1 or m > MAX_EXHAUSTIVE_WIDTH:
            raise BadParametersException(f"No modulus available for width {m}")
        for candidate in range((1 << m) | 1, 1 << (m + 1), 2):
            if is_irreducible(candidate):
                return cls(m, candidate)
        raise EntropadProgramException(f"No irreducible polynomial of degree {m}")

    @property
    def size(self) -> int:
        return 1 << self.m


def gf_mul(f: FieldGF2m, x: int, y: int) -> int:
    """Carry-less product of x and y reduced by the field modulus."""
    result = 0
    top = 1 << f.m
    while y:
        if y & 1:
            result ^= x
        y >>= 1
        x <<= 1
        if x & top:
            x ^= f.modulus
    return result


def gf_mul_array(f: FieldGF2m, x: int, ys) -> np.ndarray:
    """gf_mul(f, x, y) for every y of an integer array."""
    ys = np.asarray(ys, dtype=np.int64)
    result = np.zeros_like(ys)
    shifted = ys.copy()
    top = 1 << f.m
    for bit in range(f.m):
        if (x >> bit) & 1:
            result ^= shifted
        shifted <<= 1
        shifted = np.where(shifted & top, shifted ^ f.modulus, shifted)
    return result


def gf_inverse(f: FieldGF2m, x: int) -> int:
    """x^(2^m - 2), the multiplicative inverse of a non-zero element."""
    if x == 0:
        raise ZeroIndexException("Zero has no inverse")
    result, base, exponent = 1, x, f.size - 2
    while exponent:
        if exponent & 1:
            result = gf_mul(f, result, base)
        base = gf_mul(f, base, base)
        exponent >>= 1
    return result


class PermutationFamily:
    """
    The family {h_i : i in I} with h_i(x) = i·x over GF(2^m). The index set I is the
    non-zero field elements; i = 0 collapses everything to 0 and is not a permutation.
    """

    def __init__(self, field: FieldGF2m):
        self.field = field

    @classmethod
    def for_width(cls, m: int) -> "PermutationFamily":
        return cls(FieldGF2m.for_width(m))

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def index_count(self) -> int:
        return self.field.size - 1

    def indices(self) -> range:
        return range(1, self.field.size)

    def __repr__(self):
        return f"{type(self).__name__}(m={self.m}, modulus={self.field.modulus:#b})"


def family_apply(fam: PermutationFamily, i: int, x: int) -> int:
    """h_i(x)."""
    if i == 0:
        raise ZeroIndexException("Index 0 does not name a permutation")
    if not 0 < i < fam.field.size:
        raise BadParametersException(f"Index {i} is outside GF(2^{fam.m})")
    return gf_mul(fam.field, i, x)


@dataclass(frozen=True)
class KeySpec:
    """
    Keys are t_k-bit strings, embedded into the m-bit domain as the low t_k bits.
    Every key is equally likely.
    """

    t_k: int
    m: int

    def __post_init__(self):
        if not 0 <= self.t_k <= self.m:
            raise BadParametersException(
                f"Key length {self.t_k} must lie in [0, {self.m}]"
            )

    @property
    def size(self) -> int:
        return 1 << self.t_k

    def embed(self, key: int) -> int:
        return key

    def embedded_keys(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)


@dataclass(frozen=True)
class UniversalityReport:
    m: int
    t_k: int
    max_prob: Fraction
    """Worst a != 0 of Pr[h_i(k) XOR h_i(k') = a] with i, k, k' uniform."""
    bound: Fraction
    literal_max_prob: Fraction
    """Worst a != 0 and fixed x != y of Pr_i[h_i(x) XOR h_i(y) = a]."""

    @property
    def passed(self) -> bool:
        return self.max_prob <= self.bound

    @property
    def literal_passed(self) -> bool:
        return self.literal_max_prob <= self.bound


def verify_xor_universal(fam: PermutationFamily, keys: KeySpec) -> UniversalityReport:
    """
    Exact, exhaustive check of the key-averaged XOR-universality property.

    Since h_i is GF(2)-linear, h_i(k) XOR h_i(k') = h_i(k XOR k'). The pair count of
    every difference k XOR k' is tabulated over all key pairs first, then pushed
    through every h_i. Both passes are exhaustive and integer-valued.
    """
    m = fam.m
    if m > MAX_EXHAUSTIVE_WIDTH:
        raise DomainTooLargeException(
            f"Exhaustive verification supports m <= {MAX_EXHAUSTIVE_WIDTH}, got {m}"
        )
    if keys.m != m:
        raise BadParametersException(f"Key width {keys.m} does not match family {m}")

    embedded = keys.embedded_keys()
    difference_counts = np.zeros(fam.field.size, dtype=np.int64)
    for k in embedded:
        np.add.at(difference_counts, embedded ^ k, 1)

    domain = np.arange(fam.field.size, dtype=np.int64)
    offset_counts = np.zeros(fam.field.size, dtype=np.int64)
    for i in fam.indices():
        np.add.at(offset_counts, gf_mul_array(fam.field, i, domain), difference_counts)

    total = fam.index_count * keys.size * keys.size
    max_prob = Fraction(int(offset_counts[1:].max()), total)

    # Literal form: for fixed x != y only the difference d = x XOR y matters.
    literal_worst = 0
    indices = np.arange(1, fam.field.size, dtype=np.int64)
    for d in range(1, fam.field.size):
        images = gf_mul_array(fam.field, d, indices)
        hits = np.bincount(images, minlength=fam.field.size)
        literal_worst = max(literal_worst, int(hits[1:].max()))
    literal_max_prob = Fraction(literal_worst, fam.index_count)

    report = UniversalityReport(
        m=m,
        t_k=keys.t_k,
        max_prob=max_prob,
        bound=Fraction(1, fam.field.size),
        literal_max_prob=literal_max_prob,
    )
    logger.debug(f"Universality for m={m}, t_k={keys.t_k}: {report}")
    return report
