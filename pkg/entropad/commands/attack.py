import logging
import math
from argparse import ArgumentParser, Namespace

import numpy as np
from pyhocon import ConfigException, ConfigFactory, ConfigTree

from entropad.adversary.games import (
    FunctionTable,
    GameViews,
    RANDOM_ADVERSARIES,
    adversary_family,
    gl_reduce,
    max_f,
    strong_security_gap,
)
from entropad.adversary.witness import predicate_witness, witness_advantage
from entropad.cipher import CipherParams, key_length_required
from entropad.commands.base import Command
from entropad.exceptions import (
    ConfigParseException,
    ConstantPredicateException,
    EntropadUserException,
)
from entropad.qmatrix import min_entropy
from entropad.sources.interpretation import (
    Interpretation,
    parse_state_literal,
    random_interpretation,
)

logger = logging.getLogger(__name__)

CONSISTENCY_SLACK = 1e-12


class AttackInstance:
    """
    A game instance read from a HOCON spec:

        n = 1
        t_k = 0
        components = ["basis:0", "basis:1"]   # state literals, or omit for random
        weights = [0.5, 0.5]                  # default uniform
        f = [0, 1]                            # default random values of f_width bits
        f_width = 1
        epsilon = 0.25
        t = 0                                 # entropy claimed for the parent
        components_count = 4                  # for random interpretations
    """

    def __init__(self, config: ConfigTree, seed: int):
        rng = np.random.default_rng(seed)
        try:
            n = config.get_int("n")
            self.params = CipherParams.create(n, config.get_int("t_k"))
            self.epsilon = config.get_float("epsilon", 0.25)
            if "components" in config:
                literals = config.get_list("components")
                states = [parse_state_literal(n, str(lit), seed) for lit in literals]
                weights = config.get_list("weights", [1.0 / len(states)] * len(states))
                if len(weights) != len(states):
                    raise ConfigParseException(
                        f"{len(weights)} weights given for {len(states)} components"
                    )
                self.interp = Interpretation.from_components(
                    [(float(w), s) for w, s in zip(weights, states)]
                )
                entropy = min_entropy(self.interp.parent)
                self.t = config.get_int("t", int(math.floor(entropy + 1e-9)))
            else:
                self.t = config.get_int("t")
                self.interp = random_interpretation(
                    n, self.t, rng, config.get_int("components_count", 4)
                )
            width = config.get_int("f_width", 1)
            if "f" in config:
                outputs = [int(z) for z in config.get_list("f")]
            else:
                outputs = rng.integers(0, 1 << width, size=len(self.interp)).tolist()
            self.f = FunctionTable(outputs, width)
        except ConfigException as ex:
            raise ConfigParseException(f"Invalid attack spec: {ex}") from ex

    @classmethod
    def read_file(cls, path: str, seed: int) -> "AttackInstance":
        try:
            config = ConfigFactory.parse_file(path)
        except OSError as ex:
            raise EntropadUserException(f"Unable to read attack spec {path}") from ex
        except ConfigException as ex:
            raise ConfigParseException(f"Unable to parse attack spec {path}") from ex
        return cls(config, seed)

    @property
    def required_key_bits(self) -> int:
        return key_length_required(self.params.n, self.t, self.epsilon)


class AttackCommand(Command):
    config_type_name = "attack"
    summary = "Measure the exact prediction gap of an adversary on a game instance"

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--kind", choices=["helstrom", "gl"], required=True)
        parser.add_argument("--spec", required=True, help="Attack instance file")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--random-adversaries",
            type=int,
            default=RANDOM_ADVERSARIES,
            help="Seeded random POVMs scored alongside the optimal adversary",
        )

    def run(self, args: Namespace) -> bool:
        instance = AttackInstance.read_file(args.spec, args.seed)
        params, interp, f = instance.params, instance.interp, instance.f
        views = GameViews(interp, params)
        print(
            f"n={params.n} t_k={params.t_k} t={instance.t} eps={instance.epsilon:g} "
            f"components={len(interp)} f={list(f.outputs)}"
        )

        family = adversary_family(interp, f, params, args.seed, args.random_adversaries)
        results = [strong_security_gap(a, f, interp, params, views) for a in family]
        adversary, result = family[0], results[0]
        best_blind = max_f(f, interp)
        print(f"adversary: {adversary.name}")
        print(f"p_real {result.p_real:.12g}  p_ideal {result.p_ideal:.12g}")
        print(f"gap {result.gap:.12g}  max_f {best_blind:.12g}")
        print(
            f"family: {len(family)} adversaries, "
            f"best gap {max(r.gap for r in results):.12g}"
        )
        ok = all(r.p_real <= best_blind + r.gap + CONSISTENCY_SLACK for r in results)

        if args.kind == "gl":
            reduction = gl_reduce(adversary, f, interp, params, result.gap, views)
            print(
                f"GL predicate r={reduction.r:0{f.width}b} "
                f"h_r={list(reduction.predicate.outputs)} gap {reduction.gap:.12g} "
                f"(half the function gap: {result.gap / 2:.12g})"
            )
        elif instance.t >= 1:
            ok &= self._report_witness(instance, adversary)

        if params.t_k < instance.required_key_bits:
            verdict = "exceeds" if result.gap > instance.epsilon else "stays within"
            print(
                f"under-keyed: t_k={params.t_k} < {instance.required_key_bits} "
                f"required; gap {verdict} eps={instance.epsilon:g}"
            )
        if not ok:
            logger.error("Measured probabilities are inconsistent with max_f + gap")
        return ok

    @staticmethod
    def _report_witness(instance: AttackInstance, adversary) -> bool:
        try:
            witness = predicate_witness(instance.interp, instance.f, instance.t)
        except ConstantPredicateException:
            logger.info("Predicate is constant, no witness pair to build")
            return True
        advantage = witness_advantage(witness, adversary, 0, instance.params)
        print(
            f"witness: r0={witness.r0:.6g} "
            f"H(tau0')={min_entropy(witness.tau0_prime):.6g} "
            f"H(rho')={min_entropy(witness.rho_prime):.6g} "
            f"advantage {advantage.direct:.12g} (scaled {advantage.scaled:.12g})"
        )
        return abs(advantage.direct - advantage.scaled) <= 1e-9
