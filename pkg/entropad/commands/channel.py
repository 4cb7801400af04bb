import logging
from argparse import ArgumentParser, Namespace

from entropad.adversary.witness import flat_source_distinguisher
from entropad.cipher import (
    CipherParams,
    avg_channel,
    channel_block,
    implied_epsilon,
    indist_distance,
    joint_purity,
    purity_bound,
)
from entropad.commands.base import Command
from entropad.qmatrix import maximally_mixed, min_entropy, trace_distance
from entropad.sources.interpretation import parse_state_literal

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-12


class ChannelCommand(Command):
    config_type_name = "channel"
    summary = "Print how far each ciphertext block of one state is from I/2^n"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--t-k", type=int, required=True)
        parser.add_argument(
            "--source",
            default="mixed",
            help='State literal: "basis:3", "diag:...", "random-diagonal:1:7", ...',
        )
        parser.add_argument("--index-limit", type=int, help="Only the first N indices")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument(
            "--flat-split",
            type=int,
            metavar="T",
            help="Also compare against flat (T-1)-source decompositions",
        )

    def run(self, args: Namespace) -> bool:
        params = CipherParams.create(args.n, args.t_k)
        state = parse_state_literal(args.n, args.source, args.seed)
        mixed = maximally_mixed(args.n)
        print(f"n={args.n} t_k={args.t_k} H_min={min_entropy(state):.6g}")

        limit = args.index_limit
        if limit is not None and limit < params.index_count:
            for index in range(1, limit + 1):
                block = channel_block(state, index, params)
                print(f"i={index} {trace_distance(block, mixed):.12g}")
            return True

        out = avg_channel(state, params, args.workers)
        for index, block in out.blocks.items():
            print(f"i={index} {trace_distance(block, mixed):.12g}")
        distance = indist_distance(out)
        purity = joint_purity(out)
        bound = purity_bound(state, params)
        implied = implied_epsilon(out)
        print(f"indist_distance {distance:.12g}")
        print(f"joint_purity {purity:.12g} <= purity_bound {bound:.12g}")
        print(f"implied_epsilon {implied:.12g}")
        ok = purity <= bound + BOUND_SLACK and distance <= implied + BOUND_SLACK

        if args.flat_split is not None:
            report = flat_source_distinguisher(state, args.flat_split, params)
            print(
                f"flat (t-1)-split: distance {report.distance:.12g} "
                f"<= triangle bound {report.triangle_bound:.12g}; worst pair "
                f"wins with probability {report.win_probability:.12g}"
            )
            ok &= report.passed
        if not ok:
            logger.error("A channel bound was violated")
        return ok
