from abc import ABC
from typing import List, Union

import numpy as np

from entropad import util
from entropad.exceptions import BadParametersException
from entropad.qmatrix import DensityOperator


class SourceGenerator(ABC):
    """
    Produces random t-sources: density operators on n qubits whose min-entropy is at
    least t bits. Each generator kind stresses the cipher differently, from plain flat
    diagonal states to rotated states sitting exactly on the entropy threshold.

    Generators are looked up by their config_type_name, which is the name used in sweep
    configurations and on the command line.
    """

    config_type_name: str = NotImplemented
    """
    The name used in the program configuration to reference this generator kind. There
    can only be one name per generator, and it cannot conflict with any other generator.
    """

    def generate(self, n: int, t: int, rng: np.random.Generator) -> DensityOperator:
        """
        Draw one state.

        :abstract
        :param n: Number of qubits.
        :param t: Min-entropy lower bound in bits, 0 <= t <= n.
        :param rng: Source of randomness. The output depends on nothing else.
        :return: A state with H∞ >= t.
        """
        raise NotImplementedError(
            f"FIXME: Unimplemented generate() in {type(self).__name__}"
        )


def generator_kinds() -> List[str]:
    return sorted(util.registry(SourceGenerator, "entropad.sources"))


def get_generator(kind: str) -> SourceGenerator:
    generators = util.registry(SourceGenerator, "entropad.sources")
    try:
        return generators[kind]()
    except KeyError as ex:
        raise BadParametersException(
            f"Unknown source generator {kind}. Known: {', '.join(sorted(generators))}"
        ) from ex


def random_t_source(
    n: int, t: int, generator_kind: str, seed: Union[int, np.random.Generator]
) -> DensityOperator:
    """
    Draw a state on n qubits with min-entropy at least t using the named generator.
    The result is a function of (n, t, generator_kind, seed) only.
    """
    if n < 0 or not 0 <= t <= n or int(t) != t:
        raise BadParametersException(f"Need integers 0 <= t <= n, got n={n}, t={t}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return get_generator(generator_kind).generate(n, int(t), rng)
