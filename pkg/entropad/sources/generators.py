import numpy as np

from entropad.qmatrix import DensityOperator
from entropad.sources.base import SourceGenerator


def capped_weights(
    dim: int, cap: float, rng: np.random.Generator, concentration: float = 1.0
) -> np.ndarray:
    """
    Random probability vector of length dim with every entry at most cap. Draws from a
    symmetric Dirichlet, then repeatedly pins entries above the cap to it and rescales
    the free entries onto the remaining mass. Each round pins at least one more entry,
    so this ends within dim rounds.
    """
    weights = rng.dirichlet(np.full(dim, concentration))
    pinned = np.zeros(dim, dtype=bool)
    while True:
        over = (weights > cap) & ~pinned
        if not over.any():
            break
        pinned |= over
        weights[pinned] = cap
        free_mass = weights[~pinned].sum()
        remaining = max(0.0, 1.0 - cap * pinned.sum())
        if free_mass > 0:
            weights[~pinned] *= remaining / free_mass
    weights[pinned] = cap
    return weights / weights.sum()


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def _rotated(weights: np.ndarray, rng: np.random.Generator, n: int) -> DensityOperator:
    u = haar_unitary(len(weights), rng)
    matrix = (u * weights) @ u.conj().T
    return DensityOperator((matrix + matrix.conj().T) / 2, n)


class FlatSupportGenerator(SourceGenerator):
    """Uniform mixture of 2^t computational basis states picked at random."""

    config_type_name = "flat-random-support"

    def generate(self, n, t, rng):
        dim = 1 << n
        support = rng.choice(dim, size=1 << t, replace=False)
        weights = np.zeros(dim)
        weights[support] = 1.0 / (1 << t)
        return DensityOperator.diagonal(weights)


class RandomDiagonalGenerator(SourceGenerator):
    """Diagonal state with a random spectrum capped at 2^-t."""

    config_type_name = "random-diagonal"

    def generate(self, n, t, rng):
        return DensityOperator.diagonal(capped_weights(1 << n, 2.0 ** -t, rng))


class RandomUnitaryGenerator(SourceGenerator):
    """A capped random spectrum in a Haar-random eigenbasis."""

    config_type_name = "random-unitary-conjugated"

    def generate(self, n, t, rng):
        return _rotated(capped_weights(1 << n, 2.0 ** -t, rng), rng, n)


class ThresholdGenerator(SourceGenerator):
    """
    States sitting on the entropy threshold: the largest eigenvalue is exactly 2^-t and
    the rest of the spectrum is concentrated, so most eigenvalues sit at the cap too.
    The eigenbasis is Haar-random.
    """

    config_type_name = "adversarial-near-threshold"

    def generate(self, n, t, rng):
        dim = 1 << n
        cap = 2.0 ** -t
        weights = np.zeros(dim)
        weights[0] = cap
        if dim > 1 and cap < 1:
            rest = capped_weights(dim - 1, cap / (1 - cap), rng, concentration=0.2)
            weights[1:] = rest * (1 - cap)
        return _rotated(weights, rng, n)
