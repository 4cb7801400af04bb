import logging
from argparse import ArgumentParser, Namespace

from entropad.commands.base import Command
from entropad.sweep import SweepConfig, run_sweep

logger = logging.getLogger(__name__)


class SweepCommand(Command):
    config_type_name = "sweep"
    summary = "Run a parameter sweep from a HOCON config and write CSV rows"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="Sweep config file")
        parser.add_argument("--out", help="CSV output path, overrides the config")

    def run(self, args: Namespace) -> bool:
        cfg = SweepConfig.read_file(args.config)
        if not (args.out or cfg.out):
            logger.warning("No output path given, results are only logged")
        rows = run_sweep(cfg, args.out)

        missed = [row for row in rows if not row.passed]
        broken = [row for row in rows if not row.bounds_hold]
        for row in broken:
            logger.error(
                f"Bound violated for n={row.n} t={row.t} t_k={row.t_k} "
                f"source {row.source_id}: purity {row.joint_purity:.12g} vs "
                f"{row.purity_bound:.12g}, distance {row.trace_distance:.12g} vs "
                f"{row.implied_epsilon:.12g}"
            )
        print(
            f"{len(rows)} rows, {len(rows) - len(missed)} within target distance, "
            f"{len(broken)} purity/distance bound violations"
        )
        return not missed and not broken
