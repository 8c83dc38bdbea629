"""
Command line interface.

    fgsr pi --n 2 --word xyXY --k 2
    fgsr fullset --n 3 --word y --moves "R(x,y)"
    fgsr matrix --n 3 --moves "R(x,y)" --k 1
    fgsr rank --n 2 --k 3
    fgsr verify --n 2 --moves "R(x,y)" --mode counting
    fgsr distinguish --n 2 --moves "R(x,y)" --moves2 ""
    fgsr lift --n 2 --k 2 --vector vector.json

Results go to stdout as JSON (or plain text with ``--output text``);
diagnostics go to stderr.  Exit status is 2 for unparsable input, 3 for a
violated precondition and 1 when a verification finds a counterexample.
"""

from __future__ import annotations
import argparse
import os
import sys
from typing import Any, NamedTuple, Sequence, TextIO

import ujson as json

from .autom import Automorphism
from .preimage import full_set
from .rep import VERIFY_MODES, distinguish, phi_matrix, verify_counting, \
    verify_identities, verify_kernel
from .syntax import WordSyntaxError, format_word, parse_moves, parse_word, \
    symbol
from .utils import group_counts
from .words import DEFAULT_ORIENTATION, Orientation, canon_cyclic, \
    canon_uword, cyclic_reduce
from .zmodule import VectorK, kernel_and_coker, lift, pi_k

__all__ = ("Config", "COMMANDS", "build_parser", "run_command", "main")

COMMANDS = ("pi", "fullset", "matrix", "rank", "verify", "distinguish",
            "lift")
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
K_CAP = 8


class Config(NamedTuple):
    n: int = 2
    seed: int = 0
    trials: int = 20
    k_max: int = K_CAP
    sigma: Orientation = DEFAULT_ORIENTATION
    output: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Config:
        if args.n < 1:
            raise ValueError(f"Rank must be positive, got {args.n}")
        seed = args.seed
        if seed is None:
            seed = int(os.environ.get("FGSR_SEED", "0"))
        sigma = DEFAULT_ORIENTATION
        if args.sigma:
            try:
                table = json.loads(args.sigma)
            except ValueError as err:
                raise WordSyntaxError(f"Bad --sigma JSON: {err}") from err
            if not isinstance(table, dict):
                raise WordSyntaxError("--sigma must be a JSON object")
            sigma = Orientation({parse_word(key, args.n): parse_word(value,
                                                                     args.n)
                                 for key, value in table.items()})
        return cls(args.n, seed, args.trials, args.k_max, sigma, args.output)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2,
                        help="rank of the free group (default 2)")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for random campaigns (default $FGSR_SEED "
                             "or 0)")
    common.add_argument("--trials", type=int, default=20,
                        help="random probes per campaign (default 20)")
    common.add_argument("--k-max", type=int, default=K_CAP,
                        help=f"largest level accepted (default {K_CAP})")
    common.add_argument("--sigma", default=None,
                        help='orientation overrides as JSON, e.g. '
                             '\'{"xY": "yX"}\'')
    common.add_argument("--output", choices=("json", "text"),
                        default="json")
    return common


def _host_kind(parser: argparse.ArgumentParser, cyclic: bool) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--cyclic", dest="cyclic", action="store_true",
                       help="read the word as a cyclic word"
                            + (" (default)" if cyclic else ""))
    group.add_argument("--segment", dest="cyclic", action="store_false",
                       help="read the word as a segment"
                            + ("" if cyclic else " (default)"))
    parser.set_defaults(cyclic=cyclic)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="fgsr",
        description="Subword counts under free group automorphisms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pi", parents=[common], help="subword count vector")
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, required=True)
    _host_kind(p, cyclic=True)

    p = sub.add_parser("fullset", parents=[common],
                       help="minimal full set of a u-word")
    p.add_argument("--word", required=True)
    p.add_argument("--moves", required=True)
    _host_kind(p, cyclic=False)

    p = sub.add_parser("matrix", parents=[common], help="tower level φ_k")
    p.add_argument("--moves", required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("rank", parents=[common],
                       help="kernel rank and invariant factors")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="exact verification campaign")
    p.add_argument("--moves", default="")
    p.add_argument("--moves2", default=None)
    p.add_argument("--mode", required=True,
                   choices=("counting", *VERIFY_MODES, "kernel"))
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("distinguish", parents=[common],
                       help="first level separating two automorphisms")
    p.add_argument("--moves", required=True)
    p.add_argument("--moves2", required=True)

    p = sub.add_parser("lift", parents=[common],
                       help="lift a kernel vector to cyclic words")
    p.add_argument("--vector", required=True,
                   help="JSON file of {word: coefficient}, - for stdin")
    p.add_argument("--k", type=int, required=True)
    return parser


def _level(args: argparse.Namespace, config: Config) -> int:
    if not 1 <= args.k <= config.k_max:
        raise ValueError(f"Level must be in 1..{config.k_max}, got {args.k}")
    return args.k


def _automorphism(text: str, config: Config) -> Automorphism:
    return Automorphism(config.n, parse_moves(text, config.n))


def _cmd_pi(args, config: Config) -> tuple[int, Any]:
    word = parse_word(args.word, config.n)
    host = canon_cyclic(word) if args.cyclic else canon_uword(word)
    return 0, pi_k(host, _level(args, config)).to_json()


def _cmd_fullset(args, config: Config) -> tuple[int, Any]:
    word = parse_word(args.word, config.n)
    u = canon_uword(cyclic_reduce(word)[1] if args.cyclic else word)
    S = full_set(u, _automorphism(args.moves, config))
    counts = group_counts((e.base, e.emb.occ.start, e.emb.occ.dir)
                          for e in S)
    entries = [{"base": format_word(base.canon), "start": start,
                "dir": direction, "multiplicity": count}
               for (base, start, direction), count in counts.items()]
    return 0, {"u": format_word(u.canon), "size": len(S),
               "entries": entries}


def _cmd_matrix(args, config: Config) -> tuple[int, Any]:
    rep = phi_matrix(_automorphism(args.moves, config),
                     _level(args, config), config.sigma)
    return 0, rep.to_json()


def _cmd_rank(args, config: Config) -> tuple[int, Any]:
    k = _level(args, config)
    if k < 2:
        raise ValueError(f"rank needs k >= 2, got {k}")
    basis, invariants = kernel_and_coker(config.n, k, config.sigma)
    return 0, {"rank": len(basis), "invariants": invariants}


def _cmd_verify(args, config: Config) -> tuple[int, Any]:
    k = _level(args, config)
    phi = _automorphism(args.moves, config)
    if args.mode == "counting":
        report = verify_counting(phi, k, config.trials, config.seed)
    elif args.mode == "kernel":
        report = verify_kernel(config.n, k)
    else:
        psi = None if args.moves2 is None \
            else _automorphism(args.moves2, config)
        report = verify_identities(phi, psi, k, args.mode, config.trials,
                                   config.seed, orientation=config.sigma)
    status = 0 if report.passed else EXIT_COUNTEREXAMPLE
    return status, report.to_json()


def _cmd_distinguish(args, config: Config) -> tuple[int, Any]:
    found = distinguish(_automorphism(args.moves, config),
                        _automorphism(args.moves2, config), config.k_max)
    if found is None:
        return 0, {"level": None, "witness": None}
    level, g = found
    return 0, {"level": level, "witness": symbol(g + 1)}


def _cmd_lift(args, config: Config) -> tuple[int, Any]:
    k = _level(args, config)
    try:
        if args.vector == "-":
            table = json.load(sys.stdin)
        else:
            with open(args.vector, encoding="utf-8") as fp:
                table = json.load(fp)
    except ValueError as err:
        raise WordSyntaxError(f"Bad vector JSON: {err}") from err
    if not isinstance(table, dict) or not all(
            isinstance(value, int) for value in table.values()):
        raise WordSyntaxError("The vector file must map words to integers")
    v = VectorK(k, ((canon_uword(parse_word(word, config.n)), value)
                    for word, value in table.items()))
    return 0, lift(v, config.sigma).to_json()


_HANDLERS = {
    "pi": _cmd_pi,
    "fullset": _cmd_fullset,
    "matrix": _cmd_matrix,
    "rank": _cmd_rank,
    "verify": _cmd_verify,
    "distinguish": _cmd_distinguish,
    "lift": _cmd_lift,
}


def run_command(args: argparse.Namespace, config: Config) -> tuple[int, Any]:
    """Run one parsed subcommand and return `(status, report)`."""
    return _HANDLERS[args.command](args, config)


def _emit(report: Any, config: Config, out: TextIO) -> None:
    if config.output == "json":
        out.write(json.dumps(report, ensure_ascii=False) + "\n")
        return
    items = report.items() if isinstance(report, dict) else enumerate(report)
    for key, value in items:
        out.write(f"{key}\t{value}\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = Config.from_args(args)
        status, report = run_command(args, config)
    except WordSyntaxError as err:
        print(f"fgsr: {err}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as err:
        print(f"fgsr: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(report, config, sys.stdout)
    if status == EXIT_COUNTEREXAMPLE:
        print("fgsr: counterexample found", file=sys.stderr)
    return status
