"""CLI entry point for k-descending tree computations.

Each subcommand writes one data artifact to stdout or --out:
    python main.py tree golden:1,1 --depth 4 --format dot
    python main.py rows 3/2 --depth 7
    python main.py rho golden:1,1 --iters 50
    python main.py sweep --kmin 1.1 --kmax 9 --points 10000 --iters 40
    python main.py indicators golden:5,3 --mode lines
    python main.py verify --a 5 --b 3 --depth 25
    python main.py josephus --q 3 --eps 1e-4 --iters 400
    python main.py kvalues

Logs go to stderr. Failures print one JSON object
{"error", "message", "exit_code"} to stderr and exit with that code.
"""

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, NoReturn

logger = logging.getLogger("ktree")

_NOT_OPTIONS = {"command", "func", "config", "verbose", "quiet", "out", "meta"}


def _setup_logging(verbose: bool = False, quiet: bool = False, level: str = "INFO") -> None:
    """Configure root logging on stderr with a timestamped format."""
    if verbose:
        level = "DEBUG"
    elif quiet:
        level = "WARNING"
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _emit_error(payload: dict[str, Any]) -> None:
    sys.stderr.write(json.dumps(payload) + "\n")


def _run_command(name: str, func: Callable[[], int]) -> int:
    """Execute one subcommand and map failures to exit codes.

    Args:
        name: Subcommand name for logging.
        func: Callable returning the exit code on success.

    Returns:
        The process exit code.
    """
    from scripts.utils.errors import KTreeError

    logger.info("Starting command: %s", name)
    start = time.monotonic()
    try:
        code = func()
        elapsed = time.monotonic() - start
        logger.info("Completed command: %s (%.1fs)", name, elapsed)
        return code
    except KTreeError as exc:
        elapsed = time.monotonic() - start
        logger.error("Command failed: %s (%.1fs): %s", name, elapsed, exc)
        _emit_error(exc.to_dict())
        return exc.exit_code
    except Exception as exc:
        elapsed = time.monotonic() - start
        logger.exception("Command crashed: %s (%.1fs)", name, elapsed)
        _emit_error({"error": type(exc).__name__, "message": str(exc), "exit_code": 1})
        return 1


def _options(args: argparse.Namespace) -> dict[str, Any]:
    return {
        key: value
        for key, value in vars(args).items()
        if key not in _NOT_OPTIONS and value is not None
    }


def _finish(args: argparse.Namespace, text: str, kind: str) -> int:
    """Prepend the --meta header in the syntax of the output kind and write."""
    from scripts.utils.export import meta_header, write_output

    if args.meta:
        if kind == "json":
            from scripts.utils.config import get_config

            project = get_config().project
            meta = {
                "program": project.name,
                "version": project.version,
                "command": args.command,
                "options": {key: str(value) for key, value in sorted(_options(args).items())},
            }
            text = json.dumps({"meta": meta, "data": json.loads(text)}, indent=2) + "\n"
        else:
            prefix = "//" if kind == "dot" else "#"
            text = meta_header(args.command, _options(args), prefix=prefix) + text
    write_output(text, Path(args.out) if args.out else None)
    return 0


def _golden_params(spec: str) -> Any:
    from scripts.utils.errors import UsageError
    from scripts.utils.exactnum import parse_golden
    from scripts.utils.models import GoldenParams

    parsed = parse_golden(spec)
    if parsed is None:
        raise UsageError(f"this mode needs a golden:a,b k-spec, got {spec!r}")
    return GoldenParams(a=parsed[0], b=parsed[1])


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_tree(args: argparse.Namespace) -> int:
    """Write the slice of depth <= --depth as DOT, text or JSON, or the rhythm of a rational k."""
    from scripts.tree import build_slice, rhythm
    from scripts.utils.exactnum import parse_k
    from scripts.utils.export import model_to_json, tree_to_dot, tree_to_json, tree_to_text
    from scripts.utils.models import ExportFormat

    k = parse_k(args.k)
    if args.rhythm:
        return _finish(args, model_to_json(rhythm(k)), "json")

    tree = build_slice(k, args.depth)
    renderers = {
        ExportFormat.DOT: tree_to_dot,
        ExportFormat.TEXT: tree_to_text,
        ExportFormat.JSON: tree_to_json,
    }
    fmt = ExportFormat(args.format)
    return _finish(args, renderers[fmt](tree), fmt.value)


def cmd_rows(args: argparse.Namespace) -> int:
    """Write d, f_d, r_d; --check also compares against brute-force enumeration."""
    from scripts.rows import brute_force_row_lengths, build_row_table
    from scripts.utils.errors import ConsistencyError
    from scripts.utils.exactnum import parse_k
    from scripts.utils.export import model_to_json, rows_to_csv
    from scripts.utils.models import ExportFormat

    k = parse_k(args.k)
    table = build_row_table(k, args.depth)
    if args.check:
        brute = brute_force_row_lengths(k, args.depth)
        if brute != table.r:
            raise ConsistencyError(f"row lengths {table.r} differ from enumeration {brute}")
        logger.info("Row lengths match enumeration to depth %d", args.depth)
    if args.format == ExportFormat.JSON:
        return _finish(args, model_to_json(table), "json")
    return _finish(args, rows_to_csv(table), "csv")


def cmd_rho(args: argparse.Namespace) -> int:
    """Enclose c(k) and rho(k) for one k, or list the closed-form golden points."""
    from scripts.rho import closed_rho_points, enclose_c
    from scripts.utils.config import get_config
    from scripts.utils.errors import UsageError
    from scripts.utils.exactnum import parse_k
    from scripts.utils.export import closed_rho_to_csv, model_to_json

    digits = args.digits or get_config().sweep.render_digits
    if args.closed_points:
        return _finish(args, closed_rho_to_csv(closed_rho_points(), digits), "csv")
    if args.k is None:
        raise UsageError("rho needs a k-spec or --closed-points")

    enclosure = enclose_c(parse_k(args.k), args.iters or get_config().sweep.n_iters)
    payload = enclosure.model_dump(mode="json")
    payload["decimal"] = enclosure.rendered(digits)
    return _finish(args, json.dumps(payload, indent=2) + "\n", "json")


def cmd_sweep(args: argparse.Namespace) -> int:
    """Write the rho sweep CSV over an exact rational grid."""
    from scripts.rho import sweep
    from scripts.utils.config import get_config
    from scripts.utils.exactnum import parse_k
    from scripts.utils.export import sweep_to_csv

    config = get_config().sweep
    rows = sweep(parse_k(args.kmin), parse_k(args.kmax), args.points, args.iters or config.n_iters)
    return _finish(args, sweep_to_csv(rows, args.digits or config.render_digits), "csv")


def cmd_indicators(args: argparse.Namespace) -> int:
    """Sample the cci lines, the (x, first child) scatter, or the grandparent counts."""
    from scripts.indicator import grandparent_count, indicator_scatter, sample_lines
    from scripts.utils.config import get_config
    from scripts.utils.exactnum import parse_k
    from scripts.utils.export import indicator_samples_to_csv, model_to_json

    digits = args.digits or get_config().sweep.render_digits
    if args.mode == "scatter":
        points = indicator_scatter(parse_k(args.k), args.n_max)
        return _finish(args, indicator_samples_to_csv(points, digits), "csv")

    params = _golden_params(args.k)
    if args.mode == "lines":
        samples = sample_lines(params, args.resolution)
        return _finish(args, indicator_samples_to_csv(samples, digits), "csv")

    report = grandparent_count(params)
    summary = {
        "a": params.a,
        "b": params.b,
        "counted_range": report.counted_range.value,
        "expected": report.expected,
        "samples": len(report.samples),
        "distinct_counts": sorted(set(report.counts)),
        "verdict": report.verdict,
        "exceptions": [str(x) for x in report.exceptions],
    }
    _finish(args, json.dumps(summary, indent=2) + "\n", "json")
    return 0 if report.verdict else 1


def _verify_one(a: int, b: int, depth: int) -> Any:
    from scripts.indicator import grandparent_count
    from scripts.rho import closed_rho, enclose_c
    from scripts.rows import (
        brute_force_row_lengths,
        closed_form_row,
        leftmost_sequence,
        ratio_is_monotone,
        verify_recurrence,
    )
    from scripts.utils.config import get_config
    from scripts.utils.models import CheckResult, GoldenParams, VerifyReport

    verification = get_config().verification
    params = GoldenParams(a=a, b=b).require_recurrence_range()
    k = params.k()
    checks: list[CheckResult] = []

    recurrence = verify_recurrence(params, depth)
    checks.append(
        CheckResult(
            name="recurrence",
            passed=recurrence.holds,
            detail={"base": list(recurrence.base), "first_failure": recurrence.first_failure},
        )
    )

    mismatches = [d for d, r_d in enumerate(recurrence.rows) if closed_form_row(params, d) != r_d]
    checks.append(CheckResult(name="closed_form", passed=not mismatches, detail={"mismatches": mismatches}))

    leftmost = leftmost_sequence(k, min(depth, verification.brute_force_depth))
    brute_depth = max(d for d, f_d in enumerate(leftmost) if f_d <= verification.brute_force_nodes)
    brute = brute_force_row_lengths(k, brute_depth)
    checks.append(
        CheckResult(
            name="enumeration",
            passed=brute == recurrence.rows[: brute_depth + 1],
            detail={"depth": brute_depth},
        )
    )

    rho = closed_rho(params)
    enclosure = enclose_c(k, verification.rho_iters)
    # integer k: the lower endpoint equals c(k) exactly
    contained = enclosure.contains_rho(rho, strict=b != 0)
    checks.append(
        CheckResult(
            name="rho_enclosure",
            passed=contained,
            detail={
                "rho": str(rho),
                "n_iters": verification.rho_iters,
                **enclosure.rendered(get_config().sweep.render_digits),
            },
        )
    )

    checks.append(
        CheckResult(name="monotone_ratio", passed=ratio_is_monotone(k, min(depth, 60)))
    )

    if params.in_grandparent_range:
        report = grandparent_count(params)
        checks.append(
            CheckResult(
                name="grandparent",
                passed=report.verdict,
                detail={"expected": report.expected, "exceptions": len(report.exceptions)},
            )
        )

    return VerifyReport(
        a=a,
        b=b,
        depth=depth,
        k=str(params.value),
        passed=all(c.passed for c in checks),
        checks=checks,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    """Check the recurrence, closed form, enumeration and rho for one (a, b) or a whole grid."""
    from scripts.utils.errors import UsageError
    from scripts.utils.export import model_to_json

    if args.grid is not None:
        reports = [
            _verify_one(a, b, args.depth)
            for a in range(1, args.grid + 1)
            for b in range(2 - a, a + 1)
        ]
        failed = [f"({r.a}, {r.b})" for r in reports if not r.passed]
        logger.info("Verified %d pairs, %d failed", len(reports), len(failed))
        _finish(args, model_to_json(reports), "json")
        return 1 if failed else 0

    if args.a is None or args.b is None:
        raise UsageError("verify needs --a and --b, or --grid")
    report = _verify_one(args.a, args.b, args.depth)
    _finish(args, model_to_json(report), "json")
    return 0 if report.passed else 1


def cmd_josephus(args: argparse.Namespace) -> int:
    """Write c-enclosures on both sides of the Josephus point q/(q-1)."""
    from scripts.rho import josephus_probe
    from scripts.utils.export import model_to_json

    report = josephus_probe(args.q, args.eps, args.iters)
    return _finish(args, model_to_json(report), "json")


def cmd_kvalues(args: argparse.Namespace) -> int:
    """Write the table of golden k = (a + sqrt(a^2 + 4b)) / 2."""
    from scripts.rows import golden_table
    from scripts.utils.export import golden_table_to_csv

    table = golden_table(
        range(args.a_min, args.a_max + 1),
        range(args.b_min, args.b_max + 1),
        digits=args.digits,
    )
    return _finish(args, golden_table_to_csv(table), "csv")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _recurrence_depth(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that also reports errors as a UsageError JSON line."""

    def error(self, message: str) -> NoReturn:
        from scripts.utils.errors import UsageError

        self.print_usage(sys.stderr)
        _emit_error(UsageError(f"{self.prog}: {message}").to_dict())
        self.exit(UsageError.exit_code)


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.add_argument(
        "--meta",
        action="store_true",
        help="Prepend a metadata header (program, version, options; no timestamps)",
    )


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Argument list (defaults to sys.argv[1:]).

    Returns:
        Parsed namespace with the selected subcommand in .func.
    """
    from scripts.utils.models import ExportFormat

    parser = _Parser(
        prog="ktree",
        description="k-descending trees: slices, row lengths, rho enclosures and golden-k checks",
    )
    parser.add_argument("--config", help="Path to config.yaml (default: KTREE_CONFIG or ./config.yaml)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", help="Tree slice as DOT, text or JSON")
    p.add_argument("k", help="k-spec, e.g. 3, 3/2, golden:1,1, quad:(1,1,5,2), 1.55, real:pi")
    p.add_argument("--depth", type=_non_negative, default=4)
    p.add_argument(
        "--format",
        choices=[f.value for f in (ExportFormat.DOT, ExportFormat.TEXT, ExportFormat.JSON)],
        default=ExportFormat.DOT.value,
    )
    p.add_argument("--rhythm", action="store_true", help="Print the child-count rhythm of a rational k")
    _add_output_options(p)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("rows", help="Leftmost sequence f_d and row lengths r_d")
    p.add_argument("k")
    p.add_argument("--depth", type=_non_negative, default=10)
    p.add_argument(
        "--format",
        choices=[f.value for f in (ExportFormat.CSV, ExportFormat.JSON)],
        default=ExportFormat.CSV.value,
    )
    p.add_argument("--check", action="store_true", help="Compare against brute-force enumeration")
    _add_output_options(p)
    p.set_defaults(func=cmd_rows)

    p = sub.add_parser("rho", help="Enclosure of c(k) and rho(k)")
    p.add_argument("k", nargs="?")
    p.add_argument("--iters", type=_positive)
    p.add_argument("--digits", type=_positive)
    p.add_argument("--closed-points", action="store_true", help="Closed-form rho of every golden k in the default grid")
    _add_output_options(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("sweep", help="rho enclosures over an evenly spaced rational grid")
    p.add_argument("--kmin", required=True)
    p.add_argument("--kmax", required=True)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--iters", type=_positive)
    p.add_argument("--digits", type=_positive)
    _add_output_options(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("indicators", help="Child-count indicator data")
    p.add_argument("k")
    p.add_argument("--mode", choices=["lines", "scatter", "grandparent"], default="lines")
    p.add_argument("--resolution", type=_positive)
    p.add_argument("--n-max", type=_positive, default=500)
    p.add_argument("--digits", type=_positive)
    _add_output_options(p)
    p.set_defaults(func=cmd_indicators)

    p = sub.add_parser("verify", help="Recurrence, closed form and rho checks for golden k")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--grid", type=_positive, help="Verify every valid (a, b) with 1 <= a <= GRID")
    p.add_argument("--depth", type=_recurrence_depth, default=25)
    _add_output_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("josephus", help="Enclosures around the Josephus point q/(q-1)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--eps", type=_fraction, nargs="+", default=[Fraction(1, 1000)])
    p.add_argument("--iters", type=_positive, default=200)
    _add_output_options(p)
    p.set_defaults(func=cmd_josephus)

    p = sub.add_parser("kvalues", help="Table of golden k values")
    p.add_argument("--a-min", type=int, default=-1)
    p.add_argument("--a-max", type=int, default=7)
    p.add_argument("--b-min", type=int, default=-6)
    p.add_argument("--b-max", type=int, default=8)
    p.add_argument("--digits", type=_positive)
    _add_output_options(p)
    p.set_defaults(func=cmd_kvalues)

    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    """Entry point: load config, set up logging, dispatch the subcommand.

    Args:
        argv: Argument list (defaults to sys.argv[1:]).

    Returns:
        The process exit code.
    """
    import yaml
    from pydantic import ValidationError

    from scripts.utils.config import load_config

    args = parse_args(argv)
    try:
        config = load_config(Path(args.config) if args.config else None)
    except (FileNotFoundError, yaml.YAMLError, ValidationError) as exc:
        _setup_logging(args.verbose, args.quiet)
        logger.error("Invalid configuration: %s", exc)
        _emit_error({"error": "ConfigError", "message": str(exc), "exit_code": 2})
        return 2

    _setup_logging(args.verbose, args.quiet, config.logging.level)
    return _run_command(args.command, lambda: args.func(args))


if __name__ == "__main__":
    sys.exit(main())
