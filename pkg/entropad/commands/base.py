from abc import ABC
from argparse import ArgumentParser, Namespace
from typing import Dict, Type

from entropad import util


class Command(ABC):
    """
    One subcommand of the entropad command line. A command adds its own flags to a
    subparser, runs, and reports whether every bound it asserts held. Reports go to
    standard output; progress and failures go to the log.

    Commands are discovered at start-up: every subclass found in entropad.commands is
    offered under its config_type_name.
    """

    config_type_name: str = NotImplemented
    """
    The subcommand name typed on the command line. There can only be one name per
    command, and it cannot conflict with any other command.
    """

    summary: str = ""
    """One line shown in the command list."""

    def add_arguments(self, parser: ArgumentParser) -> None:
        """
        Declare the flags of this command.

        :abstract
        :param parser: The subparser belonging to this command.
        """
        raise NotImplementedError(
            f"FIXME: Unimplemented add_arguments() in {type(self).__name__}"
        )

    def run(self, args: Namespace) -> bool:
        """
        Execute the command.

        :abstract
        :param args: Parsed command line, including this command's flags.
        :return: True if every asserted bound held.
        """
        raise NotImplementedError(
            f"FIXME: Unimplemented run() in {type(self).__name__}"
        )


def all_commands() -> Dict[str, Type[Command]]:
    return dict(sorted(util.registry(Command, "entropad.commands").items()))
