"""Command-line entry point: ``sinegap <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 a grid point exceeded the working
precision, 3 a verified property failed.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Callable, Sequence

from . import experiments as ex
from .errors import InvalidArgumentError
from .report import to_csv, to_json, to_table

__all__ = ["main", "build_parser", "SEED_ENV"]

SEED_ENV = "SINEGAP_SEED"
EXIT_OK, EXIT_USAGE, EXIT_CONDITIONING, EXIT_FAILED = 0, 1, 2, 3
_STATUS_EXIT = {"ok": EXIT_OK, "conditioning": EXIT_CONDITIONING, "failed": EXIT_FAILED}
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _order(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"order must be 'auto' or an integer, got {text!r}") from exc


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from exc
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="write the report as JSON")
    fmt.add_argument("--csv", action="store_true", help="write the report rows as CSV")
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument(
        "--precision",
        choices=["auto", "standard", "extended"],
        default="auto",
        help="arithmetic for gap determinants (default: auto, escalating when needed)",
    )
    p.add_argument("--seed", type=_seed, default=0, help=f"random seed (also read from ${SEED_ENV})")
    p.add_argument("--config", metavar="PATH", help="key=value file mirroring these flags; flags win")
    p.add_argument("--timing", action="store_true", help="record wall time in the report metadata")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sinegap", description="Sine-kernel gap determinants and arc OPUC checks.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("gap", parents=[common], help="ln Delta(s) by Nystrom discretization")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--order", type=_order, default="auto")

    p = sub.add_parser("fit-c0-fredholm", parents=[common], help="fit c0 from ln Delta(s) at large s")
    p.add_argument("--s-min", type=float, default=6.0)
    p.add_argument("--s-max", type=float, default=12.0)
    p.add_argument("--step", type=float, default=0.5)

    p = sub.add_parser("fit-c0-widom", parents=[common], help="fit c0 from fixed-arc Toeplitz determinants")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--n-min", type=int, default=100)
    p.add_argument("--n-max", type=int, default=600)
    p.add_argument("--step", type=int, default=50)
    p.add_argument("--no-b", action="store_true", help="drop the b/n^2 term from the model")

    p = sub.add_parser("verify-thm2", parents=[common], help="endpoint expansions against exact polynomials")
    p.add_argument("--s", type=float, default=40.0)
    p.add_argument("--n-list", type=_int_list, default=[200, 400, 800])
    p.add_argument("--alpha-grid", type=_float_list, default=[0.3, 0.6, 1.0, 1.5, 2.0])
    p.add_argument("--rho-list", type=_float_list, default=[20.0, 40.0, 80.0, 150.0])
    p.add_argument("--bound", type=float, default=5.0)

    p = sub.add_parser("verify-deift", parents=[common], help="derivative identity for ln det T")
    p.add_argument("--alpha-grid", type=_float_list, default=[0.5, 1.0, 1.5])
    p.add_argument("--n-list", type=_int_list, default=[1, 2, 5, 10, 20, 40])
    p.add_argument("--h", type=float, default=1e-5)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("crosscheck-tf", parents=[common], help="Toeplitz determinant at alpha=2s/n vs Delta(s)")
    p.add_argument("--s", type=float, default=5.0)
    p.add_argument("--n-list", type=_int_list, default=[500, 1000, 2000])
    p.add_argument("--tol", type=float, default=1e-2)

    p = sub.add_parser("gue", parents=[common], help="Monte Carlo gap probabilities")
    p.add_argument("--s-list", type=_float_list, default=[0.0, 0.5, 1.0, 1.5, 2.0])
    p.add_argument("--N", type=int, default=400)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--z-max", type=float, default=4.0)
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, value = (part.strip() for part in line.split("=", 1))
                values[key.lstrip("-").replace("-", "_")] = value
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return values


def _apply_defaults(parser: argparse.ArgumentParser, command: str, values: dict[str, str]) -> None:
    subparser = parser._subparsers._group_actions[0].choices[command]
    actions = {a.dest: a for a in subparser._actions}
    converted = {}
    for key, value in values.items():
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r} for {command}")
        if isinstance(action, argparse._StoreTrueAction):
            low = value.lower()
            if low not in _TRUE | _FALSE:
                raise UsageError(f"config key {key!r} expects true or false")
            converted[key] = low in _TRUE
        else:
            # string defaults are converted by argparse with the option's type
            converted[key] = value
    subparser.set_defaults(**converted)


def _parse(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {}
    if args.config:
        config = _read_config(args.config)
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        config["seed"] = env_seed
    if config:
        parser = build_parser()
        _apply_defaults(parser, args.command, config)
        args = parser.parse_args(argv)
    return args


def _runner(args: argparse.Namespace) -> Callable[[], ex.ExperimentReport]:
    c = args.command
    if c == "gap":
        return lambda: ex.run_gap(args.s, args.order, args.precision)
    if c == "fit-c0-fredholm":
        return lambda: ex.run_fit_c0_fredholm(args.s_min, args.s_max, args.step, args.precision)
    if c == "fit-c0-widom":
        return lambda: ex.run_fit_c0_widom(args.alpha, args.n_min, args.n_max, args.step, not args.no_b)
    if c == "verify-thm2":
        return lambda: ex.run_verify_thm2(args.s, args.n_list, args.alpha_grid, args.rho_list, args.bound)
    if c == "verify-deift":
        return lambda: ex.run_verify_deift(args.alpha_grid, args.n_list, args.h, args.tol)
    if c == "crosscheck-tf":
        return lambda: ex.run_crosscheck_tf(args.s, args.n_list, args.tol)
    if c == "gue":
        return lambda: ex.run_gue(args.s_list, args.N, args.trials, args.seed, args.z_max)
    raise UsageError(f"unknown command {c!r}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(argv)
        start = time.perf_counter()
        report = _runner(args)()
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InvalidArgumentError as exc:
        print(f"sinegap: invalid argument: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report.meta["wall_time"] = time.perf_counter() - start
    if args.json:
        text = to_json(report)
    elif args.csv:
        text = to_csv(report)
    else:
        text = to_table(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.status != "ok":
        print(f"sinegap: {report.experiment}: {report.message}", file=sys.stderr)
    return _STATUS_EXIT[report.status]


if __name__ == "__main__":
    sys.exit(main())
