"""Command-line front end.

Exit codes: 0 success, 1 config or usage error, 2 infeasible parameters.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .config import ConfigError, RunConfig, load_config
from .duplex import compare
from .fading import MAX_SEED, monte_carlo
from .model import InfeasibleParamsError
from .optimizer import DEFAULT_TOL

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", type=Path, help="JSON parameter file")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--output", type=Path, default=None, help="write here instead of stdout")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="optimizer tolerance on the fraction")

    parser = _Parser(prog="wpcn", description="TDD vs FDD throughput for a wireless-powered link.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common], help="optimal TDD and FDD splits")
    sub.add_parser("compare", parents=[common], help="rates and winner only")
    sub.add_parser("sweep", parents=[common], help="solve along one parameter axis")
    mc = sub.add_parser("montecarlo", parents=[common], help="block-fading Monte Carlo")
    mc.add_argument("--seed", type=_seed, default=None, help="override the config seed")
    mc.add_argument("--workers", type=int, default=1, help="worker processes")
    return parser


def render(args: argparse.Namespace, config: RunConfig) -> str:
    params, fmt = config.params, args.format

    if args.command in ("solve", "compare"):
        cmp = compare(params, args.tol)
        if args.command == "solve":
            if fmt == "json":
                return report.to_json(report.solve_document(params, cmp))
            return report.solve_csv(cmp) if fmt == "csv" else report.solve_table(params, cmp)
        if fmt == "json":
            return report.to_json(report.compare_document(params, cmp))
        return report.compare_csv(cmp) if fmt == "csv" else report.compare_table(cmp)

    if args.command == "sweep":
        if config.sweep is None:
            raise ConfigError(f"{args.config}: sweep needs 'sweep_parameter' and values in the config")
        spec = config.sweep
        rows = report.sweep_rows(params, spec.parameter, spec.values, args.tol)
        if fmt == "json":
            return report.to_json(report.sweep_document(params, spec.parameter, spec.values, rows))
        return report.to_csv(report.SWEEP_HEADER, rows) if fmt == "csv" else report.sweep_table(rows)

    if config.montecarlo is None:
        raise ConfigError(f"{args.config}: montecarlo needs 'channel_model', 'n_blocks' and 'seed' in the config")
    spec = config.montecarlo
    seed = spec.seed if args.seed is None else args.seed
    mc = monte_carlo(params, spec.model, spec.n_blocks, seed, args.tol, max(1, args.workers))
    if fmt == "json":
        return report.to_json(report.montecarlo_document(params, mc, spec.model))
    return report.montecarlo_csv(mc, spec.model) if fmt == "csv" else report.montecarlo_table(mc, spec.model)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        text = render(args, config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleParamsError as exc:
        print(f"infeasible parameters: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
