import argparse
import importlib.resources
import logging
from typing import List

import entropad.version
from entropad.commands.base import all_commands
from entropad.exceptions import log_exception

logger = logging.getLogger(None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropad",
        description="Exact simulation of an entropically secure Pauli-mask cipher",
    )
    parser.add_argument(
        "--verbose", action="store_true", help="Log debug output from every module"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, command_cls in all_commands().items():
        command = command_cls()
        subparser = subparsers.add_parser(
            name, help=command.summary, description=command.summary
        )
        command.add_arguments(subparser)
        subparser.set_defaults(handler=command)
    return parser


def main(argv: List[str] = None) -> int:
    """
    Entry point of the entropad command line. Returns the process exit code: 0 when the
    command ran and every bound it asserts held, 1 otherwise.
    """
    # noinspection PyBroadException
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.INFO,
            format="%(levelname)s/%(name)s %(message)s",
        )
        logo = importlib.resources.read_text("entropad", "logo.txt", encoding="utf-8")
        logger.info("\n" + logo)
        logger.info(f"== entropad version {entropad.version.get_full_version()} ==")
        if args.handler.run(args):
            return 0
        logger.error(f"{args.command}: asserted bounds did not all hold")
        return 1
    except KeyboardInterrupt:
        logger.info("Interrupt received, exiting now. Partial results are not written.")
        return 1
    except Exception as ex:
        log_exception(logger, ex)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
