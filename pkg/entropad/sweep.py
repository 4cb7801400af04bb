"""
Parameter sweeps over (n, t, ε, t_k) cells. Every cell draws sources_per_cell random
t-sources, pushes each through the exact channel and records one CSV row per source.

The state drawn for source j of an (n, t) pair depends only on the master seed, n, t
and j, so the same states are reused across the ε and t_k columns of that pair.
"""
import csv
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from pyhocon import ConfigException, ConfigFactory, ConfigTree

from entropad.cipher import (
    MAX_QUBITS,
    CipherParams,
    avg_channel,
    implied_epsilon,
    indist_distance,
    joint_purity,
    key_length_required,
    purity_bound,
)
from entropad.exceptions import (
    ConfigParseException,
    EntropadUserException,
)
from entropad.sources.base import generator_kinds, random_t_source

logger = logging.getLogger(__name__)

RNG_NAME = "numpy.random.PCG64"
BOUND_SLACK = 1e-12
REQUIRED = "required"


def _as_list(config: ConfigTree, key: str, cast) -> list:
    """A HOCON list, a quoted "a,b,c" string or a single scalar, as a list."""
    value = config.get(key)
    if isinstance(value, str):
        value = [part.strip() for part in value.split(",") if part.strip()]
    elif not isinstance(value, list):
        value = [value]
    try:
        items = [cast(item) for item in value]
    except (TypeError, ValueError) as ex:
        raise ConfigParseException(f"Cannot read '{key}' from {value}") from ex
    if not items:
        raise ConfigParseException(f"'{key}' must not be empty")
    return items


@dataclass(frozen=True)
class SweepConfig:
    n: Tuple[int, ...]
    t: Tuple[int, ...]
    t_k: Union[Tuple[int, ...], str]
    """Key lengths, or "required" for key_length_required(n, t, ε) per cell."""
    epsilon: Tuple[float, ...]
    generators: Tuple[str, ...]
    sources_per_cell: int
    seed: int
    out: Optional[str] = None
    workers: int = 1
    record_timing: bool = False

    def __post_init__(self):
        if any(not 1 <= n <= MAX_QUBITS for n in self.n):
            raise ConfigParseException(f"n must lie in 1..{MAX_QUBITS}, got {self.n}")
        if any(not 0 < e <= 1 for e in self.epsilon):
            raise ConfigParseException(
                f"epsilon must lie in (0, 1], got {self.epsilon}"
            )
        if self.t_k != REQUIRED:
            too_long = [
                (n, k) for n in self.n for k in self.t_k if not 0 <= k <= 2 * n
            ]
            if too_long:
                raise ConfigParseException(
                    f"Key lengths must lie in [0, 2n]; rejected (n, t_k) cells "
                    f"{too_long}"
                )
        unknown = set(self.generators) - set(generator_kinds())
        if unknown:
            raise ConfigParseException(
                f"Unknown generators {sorted(unknown)}. "
                f"Known: {', '.join(generator_kinds())}"
            )
        if self.sources_per_cell < 1 or self.workers < 1:
            raise ConfigParseException("sources_per_cell and workers must be positive")

    @classmethod
    def from_config(cls, config: ConfigTree) -> "SweepConfig":
        try:
            t_k_value = config.get("t_k")
            if isinstance(t_k_value, str) and t_k_value.strip() == REQUIRED:
                t_k = REQUIRED
            else:
                t_k = tuple(_as_list(config, "t_k", int))
            return cls(
                n=tuple(_as_list(config, "n", int)),
                t=tuple(_as_list(config, "t", int)),
                t_k=t_k,
                epsilon=tuple(_as_list(config, "epsilon", float)),
                generators=tuple(_as_list(config, "generators", str)),
                sources_per_cell=config.get_int("sources_per_cell"),
                seed=config.get_int("seed"),
                out=config.get_string("out", None),
                workers=config.get_int("workers", 1),
                record_timing=config.get_bool("record_timing", False),
            )
        except ConfigException as ex:
            raise ConfigParseException(f"Invalid sweep configuration: {ex}") from ex

    @classmethod
    def read_file(cls, path: str) -> "SweepConfig":
        try:
            config = ConfigFactory.parse_file(path)
        except OSError as ex:
            raise EntropadUserException(f"Unable to read sweep config {path}") from ex
        except ConfigException as ex:
            raise ConfigParseException(f"Unable to parse sweep config {path}") from ex
        if len(config) == 0:
            raise ConfigParseException(f"Empty sweep config at {path}")
        logger.info(f"Using sweep config at {path}")
        return cls.from_config(config)

    def cells(self) -> Iterable[Tuple[int, int, float, int]]:
        """(n, t, ε, t_k) in config order. Pairs with t > n are skipped."""
        for n in self.n:
            for t in self.t:
                if t > n:
                    logger.debug(f"Skipping t={t} > n={n}")
                    continue
                for epsilon in self.epsilon:
                    if self.t_k == REQUIRED:
                        key_lengths = [key_length_required(n, t, epsilon)]
                    else:
                        key_lengths = self.t_k
                    for t_k in key_lengths:
                        yield n, t, epsilon, t_k


@dataclass(frozen=True)
class SweepRow:
    n: int
    t: int
    t_k: int
    epsilon_target: float
    seed: int
    source_id: int
    generator_kind: str
    trace_distance: float
    joint_purity: float
    purity_bound: float
    implied_epsilon: float
    passed: bool
    runtime_ms: float

    @property
    def bounds_hold(self) -> bool:
        """The purity chain and the purity-implied distance bound."""
        return (
            self.joint_purity <= self.purity_bound + BOUND_SLACK
            and self.trace_distance <= self.implied_epsilon + BOUND_SLACK
        )

    def csv_fields(self) -> List[str]:
        def text(value) -> str:
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return f"{value:.12g}"
            return str(value)

        return [text(getattr(self, field.name)) for field in fields(self)]


CSV_HEADER = [
    "n",
    "t",
    "t_k",
    "epsilon_target",
    "seed",
    "source_id",
    "generator_kind",
    "trace_distance",
    "joint_purity",
    "purity_bound",
    "implied_epsilon",
    "pass",
    "runtime_ms",
]


def source_seed(master: int, n: int, t: int, source_id: int) -> int:
    return int(np.random.SeedSequence([master, n, t, source_id]).generate_state(1)[0])


def run_cell(cfg: SweepConfig, cell: Tuple[int, int, float, int]) -> List[SweepRow]:
    n, t, epsilon, t_k = cell
    params = CipherParams.create(n, t_k)
    rows = []
    for source_id in range(cfg.sources_per_cell):
        kind = cfg.generators[source_id % len(cfg.generators)]
        seed = source_seed(cfg.seed, n, t, source_id)
        started = time.perf_counter()
        state = random_t_source(n, t, kind, seed)
        out = avg_channel(state, params)
        distance = indist_distance(out)
        runtime = (time.perf_counter() - started) * 1000 if cfg.record_timing else 0.0
        rows.append(
            SweepRow(
                n=n,
                t=t,
                t_k=t_k,
                epsilon_target=epsilon,
                seed=seed,
                source_id=source_id,
                generator_kind=kind,
                trace_distance=distance,
                joint_purity=joint_purity(out),
                purity_bound=purity_bound(state, params),
                implied_epsilon=implied_epsilon(out),
                passed=distance <= epsilon,
                runtime_ms=runtime,
            )
        )
    worst = max(row.trace_distance for row in rows)
    logger.info(
        f"Cell n={n} t={t} eps={epsilon:g} t_k={t_k}: max trace distance {worst:.6g}"
        f"{'' if worst <= epsilon else ' EXCEEDS TARGET'}"
    )
    return rows


def write_csv(rows: List[SweepRow], master_seed: int, path: str) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            handle.write(f"# rng={RNG_NAME} seed={master_seed}\n")
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(row.csv_fields() for row in rows)
    except OSError as ex:
        raise EntropadUserException(f"Unable to write sweep results to {path}") from ex


def run_sweep(cfg: SweepConfig, out: str = None) -> List[SweepRow]:
    """
    Run every cell and write the rows to `out` (or the configured path) in (cell,
    source) order. Cells run in worker processes when cfg.workers > 1; the row order
    does not depend on which finishes first.
    """
    cells = list(cfg.cells())
    logger.info(
        f"Sweeping {len(cells)} cells x {cfg.sources_per_cell} sources "
        f"with {cfg.workers} worker(s)"
    )
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            per_cell = list(pool.map(run_cell, [cfg] * len(cells), cells))
    else:
        per_cell = [run_cell(cfg, cell) for cell in cells]
    rows = [row for cell_rows in per_cell for row in cell_rows]

    path = out or cfg.out
    if path:
        write_csv(rows, cfg.seed, path)
        logger.info(f"Wrote {len(rows)} rows to {path}")
    return rows
