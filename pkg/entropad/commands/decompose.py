from argparse import ArgumentParser, Namespace

import numpy as np

from entropad.commands.base import Command
from entropad.sources.flat import RECONSTRUCTION_TOLERANCE, decompose_flat
from entropad.sources.interpretation import parse_weights


class DecomposeCommand(Command):
    config_type_name = "decompose"
    summary = "Split a t-source distribution into flat t-sources"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            "--weights", required=True, help='Comma separated weights, "0.5,0.5"'
        )
        parser.add_argument("--t", type=int, required=True, help="Flat entropy bits")

    def run(self, args: Namespace) -> bool:
        weights = np.array(parse_weights(args.weights))
        decomposition = decompose_flat(weights, args.t)
        for weight, source in decomposition.terms:
            support = ",".join(str(i) for i in source.support)
            print(f"{weight:.12g} x uniform{{{support}}}")
        residual = float(np.max(np.abs(decomposition.reconstruct() - weights)))
        print(f"{len(decomposition.terms)} term(s), residual {residual:.3g}")
        return residual <= RECONSTRUCTION_TOLERANCE
