import argparse
from typing import Any, Sequence

from python.helpers.errors import UsageError

COMMANDS = ("classify", "test", "extract", "gallery")


class _Parser(argparse.ArgumentParser):
    # argparse exits on bad input; the CLI maps usage problems to status 1 itself
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holomat", description="Classify orthogonally multiplicative holomorphic matrix maps.")
    parser.add_argument("command", choices=COMMANDS, help="what to run")
    parser.add_argument("source", help="standard-form spec file (JSON) or gallery entry name")
    parser.add_argument("--seed", type=int, default=None, help="random seed")
    parser.add_argument("--nmax", type=int, default=None, help="highest extracted degree")
    parser.add_argument("--nodes", type=int, default=None, help="quadrature nodes (0 = 2*nmax+2)")
    parser.add_argument("--trials", type=int, default=None, help="trials per property tester")
    parser.add_argument("--tol-construct", type=float, default=None, help="construction tolerance")
    parser.add_argument("--tol-verify", type=float, default=None, help="verification tolerance")
    parser.add_argument("--tol-decide", type=float, default=None, help="decision tolerance")
    parser.add_argument("--k", type=int, default=None, help="gallery entry size")
    parser.add_argument("--workers", type=int, default=None, help="threads for trial evaluation")
    parser.add_argument("--anchor", type=int, default=None, help="force the anchor degree")
    parser.add_argument("--out", default=None, help="report path (stdout when omitted)")
    return parser


# argument name -> settings key
SETTINGS_ARGS = {
    "seed": "seed",
    "nmax": "n_max",
    "nodes": "nodes",
    "trials": "trials",
    "tol_construct": "tol_construct",
    "tol_verify": "tol_verify",
    "tol_decide": "tol_decide",
    "k": "gallery_k",
    "workers": "workers",
}

args: dict[str, Any] = {}


def initialize(argv: Sequence[str] | None = None) -> dict[str, Any]:
    global args
    args = vars(_parser().parse_args(argv))
    return args


def get_arg(name: str):
    return args.get(name, None)


def has_arg(name: str):
    return args.get(name, None) is not None


def settings_overrides(parsed: dict[str, Any] | None = None) -> dict[str, Any]:
    parsed = parsed if parsed is not None else args
    return {key: parsed[name] for name, key in SETTINGS_ARGS.items() if parsed.get(name) is not None}
