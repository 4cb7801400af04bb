import importlib
import pkgutil
from functools import lru_cache
from types import ModuleType
from typing import Union, TypeVar, Type, Iterable

import numpy as np


def import_all_submodules(parent_module: Union[str, ModuleType]) -> None:
    """
    Recursively imports all submodules of the given module. Ensures that all classes are
    loaded, and all import-time code is executed. Required by find_all_subclasses() to
    get accurate results.
    https://stackoverflow.com/a/25562415
    """
    if isinstance(parent_module, str):
        parent_module = importlib.import_module(parent_module)
    for loader, name, is_pkg in pkgutil.walk_packages(parent_module.__path__):
        full_name = parent_module.__name__ + "." + name
        importlib.import_module(full_name)
        if is_pkg:
            import_all_submodules(full_name)


C = TypeVar("C")


def find_all_subclasses(parent_cls: Type[C]) -> Iterable[Type[C]]:
    """
    Recursively iterates through all subclasses of the given class. You should call
    import_all_submodules() before this to ensure that all of the classes are actually
    loaded.
    https://stackoverflow.com/a/33607093
    """
    for cls in parent_cls.__subclasses__():
        yield from find_all_subclasses(cls)
        yield cls


def registry(parent_cls: Type[C], package: str) -> dict:
    """
    Map config_type_name -> class for every concrete subclass of parent_cls found in
    the given package.
    """
    import_all_submodules(package)
    return {
        cls.config_type_name: cls
        for cls in find_all_subclasses(parent_cls)
        if isinstance(cls.config_type_name, str)
    }


def parity(value: int) -> int:
    """GF(2) parity of the set bits of a non-negative integer."""
    return bin(value).count("1") & 1


@lru_cache(maxsize=None)
def parity_table(n_bits: int) -> np.ndarray:
    """Parity of every n_bits-wide value, as a uint8 lookup table."""
    table = np.zeros(1 << n_bits, dtype=np.uint8)
    for bit in range(n_bits):
        table ^= ((np.arange(1 << n_bits) >> bit) & 1).astype(np.uint8)
    return table
