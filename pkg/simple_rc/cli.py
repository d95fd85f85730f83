"""
Command-line interface

Subcommands:
    simulate     Monte Carlo size / power study -> CSV tables
    test-pair    pair test on an adjacency file -> TestReport JSON
    test-group   group test on an adjacency file -> TestReport JSON
    spectral     eigenvalue and K0 diagnostics
    ingest-corr  series panel -> correlation network adjacency file
    rmt-check    random matrix diagnostics sweep -> CSV

Node indices on the command line and in reports are 1-based.
Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 other errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
import yaml
from colorama import Fore, Style, just_fix_windows_console
from pydantic import ValidationError

from ._version import __version__
from .config import (
    CSV_FLOAT_FORMAT,
    DEFAULT_ALPHA,
    DEFAULT_CORRELATION_THRESHOLD,
    DEFAULT_WORKERS,
    JSON_INDENT,
    LOG_FORMAT,
    LOG_LEVEL,
    RMT_SWEEP_FILE,
    VERBOSE_OUTPUT,
)
from .enums import AdjacencyFormat, Scope, Variant
from .errors import ConfigurationError, NoSignalError, PreconditionError, SimpleRCError
from .harness import SimConfig, build_sim_config, load_sweep, monte_carlo, write_outputs
from .inference import run_group_test, run_pair_test
from .ingest import correlation_network, load_adjacency, load_series_panel, save_adjacency
from .rmt_checks import rmt_sweep
from .spectral import eigendecompose, estimate_k0, k0_threshold, max_degree_q, spectrum_to_csv
from .utils.file_io import ensure_directories, get_file_size

logger = logging.getLogger("simple_rc.cli")

STOCHASTIC_HINT = "stochastic subcommands need an explicit --seed"


# ============================================================================
# OUTPUT HELPERS
# ============================================================================

def print_status(message: str) -> None:
    """Status line on stderr, kept off stdout so JSON output stays clean"""
    if VERBOSE_OUTPUT:
        print(f"{Fore.GREEN}✓{Style.RESET_ALL} {message}", file=sys.stderr)


def print_error(error: Exception) -> None:
    print(f"{Fore.RED}✗ {type(error).__name__}: {error}{Style.RESET_ALL}", file=sys.stderr)


def emit_json(data: dict, out: Optional[str]) -> None:
    text = json.dumps(data, indent=JSON_INDENT) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    ensure_directories(path.parent)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    print_status(f"Wrote {path} ({get_file_size(path)})")


def parse_nodes(text: str) -> List[int]:
    """'1,2,3' (1-based) -> [0, 1, 2]"""
    nodes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            value = int(token)
        except ValueError:
            raise PreconditionError(f"Node '{token}' is not an integer")
        if value < 1:
            raise PreconditionError(f"Nodes are 1-based, got {value}")
        nodes.append(value - 1)
    return nodes


def parse_floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise PreconditionError(f"Expected a comma-separated list of numbers, got '{text}'")


def parse_ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise PreconditionError(f"Expected a comma-separated list of integers, got '{text}'")


def require_seed(args) -> None:
    if args.seed is None:
        raise PreconditionError(f"--seed is required ({STOCHASTIC_HINT})")


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_simulate(args) -> int:
    overrides = {"seed": args.seed, "reps": args.reps}
    overrides = {k: v for k, v in overrides.items() if v is not None}

    if args.config is not None:
        configs = load_sweep(args.config)
        try:
            configs = [
                SimConfig.model_validate({**c.model_dump(), **overrides}) for c in configs
            ]
        except ValidationError as e:
            raise ConfigurationError(f"Invalid override: {e}", context="cli")
    else:
        if args.example is None:
            raise PreconditionError("simulate needs --example or --config")
        require_seed(args)
        configs = [build_sim_config(
            args.example,
            n=args.n,
            n0=args.n0,
            theta=args.theta,
            delta=args.delta,
            m=args.m,
            k0=args.k0,
            variant=args.variant,
            scope=args.scope,
            alpha=args.alpha,
            loglog_multiplier=args.loglog_multiplier,
            subsample=args.subsample,
            **overrides,
        )]

    summaries = []
    for i, config in enumerate(configs, start=1):
        print_status(f"[{i}/{len(configs)}] {config.label} ({config.reps} reps)")
        summary = monte_carlo(config, workers=args.workers, progress=VERBOSE_OUTPUT)
        print_status(
            f"    rate={summary.rejection_rate:.4f} "
            f"[{summary.ci_low:.4f}, {summary.ci_high:.4f}] failures={summary.failures}"
        )
        summaries.append(summary)

    paths = write_outputs(summaries, args.out_dir)
    print_status(f"Wrote {len(paths)} files to {args.out_dir}")
    return 0


def cmd_test_pair(args) -> int:
    nodes = parse_nodes(args.nodes)
    if len(nodes) != 2:
        raise PreconditionError(f"test-pair needs exactly two nodes, got {len(nodes)}")
    X = load_adjacency(args.adj, args.format)
    report = run_pair_test(
        X, nodes[0], nodes[1],
        alpha=args.alpha,
        variant=args.variant,
        k0_override=args.k0,
        loglog_multiplier=args.loglog_multiplier,
    )
    emit_json(report.one_based().model_dump(mode="json"), args.out)
    return 0


def cmd_test_group(args) -> int:
    require_seed(args)
    nodes = parse_nodes(args.nodes)
    X = load_adjacency(args.adj, args.format)
    report = run_group_test(
        X, nodes,
        alpha=args.alpha,
        variant=args.variant,
        seed=args.seed,
        k0_override=args.k0,
        subsample=args.subsample,
        loglog_multiplier=args.loglog_multiplier,
    )
    emit_json(report.one_based().model_dump(mode="json"), args.out)
    return 0


def cmd_spectral(args) -> int:
    X = load_adjacency(args.adj, args.format)
    spectrum = eigendecompose(X)
    _, q_check = max_degree_q(X)

    summary = {
        "version": __version__,
        "n": X.n,
        "q_check": q_check,
        "thresholds": {},
        "k0": {},
        "eigenvalues": [float(d) for d in spectrum.eigenvalues[:args.top]],
    }
    for rule in ("pair", "group"):
        summary["thresholds"][rule] = k0_threshold(q_check, X.n, rule, args.loglog_multiplier)
        try:
            summary["k0"][rule] = estimate_k0(spectrum, q_check, X.n, rule, args.loglog_multiplier)
        except NoSignalError as e:
            logger.warning(str(e))
            summary["k0"][rule] = 0

    if args.csv is not None:
        ensure_directories(Path(args.csv).parent)
        spectrum_to_csv(spectrum, args.csv, q_check)
        print_status(f"Wrote {args.csv}")
    emit_json(summary, args.out)
    return 0


def cmd_ingest_corr(args) -> int:
    panel = load_series_panel(args.panel, args.covariates, missing=args.missing)
    X = correlation_network(panel, args.threshold, residualize_covariates=args.residualize)
    path = save_adjacency(X, args.out, args.format)
    print_status(f"{panel.n} series, {int(np.triu(X.values).sum())} edges -> {path} ({get_file_size(path)})")
    return 0


def cmd_rmt_check(args) -> int:
    settings = {}
    if args.sweep is not None:
        try:
            with open(args.sweep, "r", encoding="utf-8") as f:
                settings = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"Cannot read sweep {args.sweep}: {e}", context="cli")
        unknown = set(settings) - {"thetas", "seeds", "example", "n", "n0", "k0", "z_grid"}
        if unknown:
            raise ConfigurationError(f"Unknown sweep keys: {sorted(unknown)}", context="cli")

    flags = {
        "thetas": parse_floats(args.thetas) if args.thetas else None,
        "seeds": parse_ints(args.seeds) if args.seeds else None,
        "example": args.example,
        "n": args.n,
        "n0": args.n0,
        "k0": args.k0,
        "z_grid": parse_floats(args.z_grid) if args.z_grid else None,
    }
    settings.update({k: v for k, v in flags.items() if v is not None})
    if not settings.get("seeds"):
        raise PreconditionError(f"--seeds is required ({STOCHASTIC_HINT})")
    if not settings.get("thetas"):
        raise PreconditionError("rmt-check needs --thetas or a sweep file")

    frame = rmt_sweep(**settings)
    out_dir = Path(args.out_dir)
    ensure_directories(out_dir)
    path = out_dir / RMT_SWEEP_FILE
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    print_status(f"{len(frame)} rows -> {path}")
    return 0


# ============================================================================
# PARSER
# ============================================================================

def _add_adjacency_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--adj", required=True, help="Adjacency file")
    parser.add_argument(
        "--format",
        choices=[f.value for f in AdjacencyFormat],
        default=None,
        help="Adjacency format (inferred from the suffix if omitted)",
    )


def _add_test_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    parser.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.T.value)
    parser.add_argument("--k0", type=int, default=None, help="Fixed K0 instead of the data-driven rule")
    parser.add_argument("--loglog-multiplier", type=float, default=None)
    parser.add_argument("--out", default=None, help="Report path (stdout if omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simple_rc",
        description="Spectral tests of membership-profile similarity for network nodes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo size / power study")
    p.add_argument("--config", default=None, help="YAML sweep file")
    p.add_argument("--example", type=int, choices=[1, 2, 3, 4], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n0", type=int, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k0", type=int, default=None)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=None)
    p.add_argument("--scope", choices=[s.value for s in Scope], default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--loglog-multiplier", type=float, default=None)
    p.add_argument("--subsample", type=int, default=None)
    p.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    p.add_argument("--out-dir", default="results")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("test-pair", help="Test whether two nodes share a membership profile")
    _add_adjacency_args(p)
    p.add_argument("--nodes", required=True, help="Two 1-based nodes, e.g. 3,17")
    _add_test_args(p)
    p.set_defaults(handler=cmd_test_pair)

    p = sub.add_parser("test-group", help="Test whether a group shares a membership profile")
    _add_adjacency_args(p)
    p.add_argument("--nodes", required=True, help="1-based nodes, e.g. 1,2,3,4,5,6")
    p.add_argument("--seed", type=int, default=None, help="Coupling seed")
    p.add_argument("--subsample", type=int, default=None)
    _add_test_args(p)
    p.set_defaults(handler=cmd_test_group)

    p = sub.add_parser("spectral", help="Eigenvalue and K0 diagnostics")
    _add_adjacency_args(p)
    p.add_argument("--top", type=int, default=10, help="Eigenvalues listed in the summary")
    p.add_argument("--loglog-multiplier", type=float, default=None)
    p.add_argument("--csv", default=None, help="Write the full eigenvalue table here")
    p.add_argument("--out", default=None, help="Summary path (stdout if omitted)")
    p.set_defaults(handler=cmd_spectral)

    p = sub.add_parser("ingest-corr", help="Build a correlation network from a series panel")
    p.add_argument("--panel", required=True, help="CSV, one column per series")
    p.add_argument("--covariates", default=None, help="CSV of covariates, same rows")
    p.add_argument("--threshold", type=float, default=DEFAULT_CORRELATION_THRESHOLD)
    p.add_argument("--residualize", action="store_true")
    p.add_argument("--missing", choices=["rows", "series"], default="rows")
    p.add_argument("--out", required=True, help="Adjacency output path")
    p.add_argument("--format", choices=[f.value for f in AdjacencyFormat], default=None)
    p.set_defaults(handler=cmd_ingest_corr)

    p = sub.add_parser("rmt-check", help="Random matrix diagnostics sweep")
    p.add_argument("--sweep", default=None, help="YAML with thetas, seeds, example, n, n0, k0, z_grid")
    p.add_argument("--example", type=int, choices=[1, 2, 3, 4], default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n0", type=int, default=None)
    p.add_argument("--k0", type=int, default=None)
    p.add_argument("--thetas", default=None, help="Comma-separated sparsity values")
    p.add_argument("--seeds", default=None, help="Comma-separated sampling seeds")
    p.add_argument("--z-grid", default=None, help="Comma-separated real spectral points")
    p.add_argument("--out-dir", default="results")
    p.set_defaults(handler=cmd_rmt_check)

    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand, map errors onto exit codes"""
    just_fix_windows_console()
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except SimpleRCError as e:
        print_error(e)
        return e.exit_code
    except Exception as e:
        logger.exception("Unexpected failure")
        print_error(e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
