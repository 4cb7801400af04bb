import numpy as np
import pytest

from entropad.qmatrix import DensityOperator
from entropad.sources.generators import haar_unitary


def random_state(n: int, rng: np.random.Generator, rank: int = None) -> DensityOperator:
    """A random density operator on n qubits with the given rank (default full)."""
    dim = 1 << n
    rank = dim if rank is None else rank
    u = haar_unitary(dim, rng)
    weights = np.zeros(dim)
    weights[:rank] = rng.dirichlet(np.ones(rank))
    matrix = (u * weights) @ u.conj().T
    return DensityOperator((matrix + matrix.conj().T) / 2, n)


def plus_state() -> DensityOperator:
    return DensityOperator.pure([1, 1])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
