from argparse import ArgumentParser, Namespace

from entropad.commands.base import Command
from entropad.exceptions import DomainTooLargeException
from entropad.hashfam import (
    MAX_EXHAUSTIVE_WIDTH,
    KeySpec,
    PermutationFamily,
    verify_xor_universal,
)


class VerifyFamilyCommand(Command):
    config_type_name = "verify-family"
    summary = "Exhaustively check XOR-universality of the GF(2^m) family"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="Bit width")
        parser.add_argument(
            "--t-k", type=int, help="Key length to average over (default: m)"
        )

    def run(self, args: Namespace) -> bool:
        if args.m > MAX_EXHAUSTIVE_WIDTH:
            raise DomainTooLargeException(
                f"Exhaustive verification supports m <= {MAX_EXHAUSTIVE_WIDTH}, "
                f"got {args.m}"
            )
        family = PermutationFamily.for_width(args.m)
        keys = KeySpec(args.m if args.t_k is None else args.t_k, args.m)
        report = verify_xor_universal(family, keys)
        print(f"family: h_i(x) = i*x mod {family.field.modulus:#b}")
        print(f"key bits: {keys.t_k}")
        print(f"max averaged offset probability: {report.max_prob}")
        print(f"bound 2^-m: {report.bound}")
        print(f"literal worst case over fixed x != y: {report.literal_max_prob}")
        print("PASS" if report.passed else "FAIL")
        return report.passed
