"""
Command-line entry point. JSON reports go to stdout or --output; logs go to
stderr and the log file.

    python python_scripts/blowup_cli.py verify-blowup --rank 2 --k 1 --order 9
    python python_scripts/blowup_cli.py compute-yk --rank 2 --k 1 --order 9 --form main
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import report_builder
from blowup_factor import YkRequest, yk_euler, yk_gottsche, yk_hol, yk_main
from characters import SUBSTITUTIONS
from coefficients import SYMBOLIC, YMode, retry_on_degenerate
from config import (
    CONVENTIONS,
    DEFAULT_RANK1_ORDER,
    DEFAULT_RANK1_SEEDS,
    DEFAULT_SEEDS,
    SCHEMA_VERSION,
    default_log_file,
    get_cache_dir,
)
from errors import BlowupError
from fixed_point_cache import FixedPointCache
from genera import Mode, SeriesRequest, compute_z, compute_zhat, series_report
from rank1 import WRequest, w_series
from verify import (
    cutoffs,
    log_summary,
    verify_all,
    verify_corollary,
    verify_limit_consistency,
    verify_main_theorem,
    verify_rank1,
)

SERIES_COMMANDS = ("compute-z", "compute-zhat", "compute-yk", "verify-blowup", "verify-corollary", "verify-limits")


def setup_logging(log_file=None, level="INFO"):
    log_file = Path(log_file) if log_file else default_log_file
    log_file.parent.mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[logging.FileHandler(log_file), logging.StreamHandler(sys.stderr)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="Write the JSON report here instead of stdout")
    common.add_argument("--cache-dir", help="Fixed-point enumeration cache (overrides $BLOWUP_CACHE_DIR)")
    common.add_argument("--threads", type=int, default=1, help="Worker threads per fixed-point sum")
    common.add_argument("--timing", action="store_true", help="Include wall-clock times in the report")
    common.add_argument("--log-file", help=f"Log file (default: {default_log_file})")
    common.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument(
        "--seeds",
        help="Seed count (e.g. 3) or comma-separated seed list (e.g. 11,23); "
        f"default {','.join(str(s) for s in DEFAULT_SEEDS)}",
    )
    common.add_argument("--seed-base", type=int, help="First seed when --seeds is a count")
    common.add_argument("--order", type=int, help="Largest q-exponent computed or checked")

    series = argparse.ArgumentParser(add_help=False)
    series.add_argument("--rank", type=int, default=1, help="Rank r >= 1")
    series.add_argument("--k", type=int, default=0, help="Exceptional degree, 0 <= k < r")
    series.add_argument("--y-mode", choices=["symbolic", "numeric"], default="symbolic")
    series.add_argument("--y-value", help="Rational value of y in numeric mode, e.g. 1 or 2/3")
    series.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EQUIVARIANT.value)

    parser = argparse.ArgumentParser(
        prog="blowup_cli",
        description="Exact localization checks of the blow-up formula for framed sheaves",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in SERIES_COMMANDS:
        sub = subparsers.add_parser(name, parents=[common, series])
        if name == "compute-yk":
            sub.add_argument("--form", choices=["main", "gottsche", "euler", "hol"], default="main")
    w = subparsers.add_parser("compute-w", parents=[common])
    w.add_argument("--substitution", choices=sorted(SUBSTITUTIONS), default="identity")
    subparsers.add_parser("verify-rank1", parents=[common])
    verify = subparsers.add_parser("verify-all", parents=[common])
    verify.add_argument("--html", help="Also write an HTML summary page here")
    return parser


def resolve_seeds(parser, value, seed_base, default_count):
    try:
        if value and "," in value:
            seeds = [int(s) for s in value.split(",") if s.strip()]
            if not seeds:
                parser.error(f"--seeds lists no seeds: {value!r}")
            return seeds
        count = int(value) if value else default_count
    except ValueError:
        parser.error(f"Invalid --seeds value: {value!r}")
    if count < 1:
        parser.error(f"--seeds count must be at least 1, got {count}")
    if seed_base is not None:
        return [seed_base + i for i in range(count)]
    seeds = list(DEFAULT_SEEDS[:count])
    while len(seeds) < count:
        seeds.append(seeds[-1] + 1)
    return seeds


def resolve_y_mode(parser, args) -> YMode:
    if args.y_mode == "symbolic":
        return SYMBOLIC
    if args.y_value is None:
        parser.error("--y-mode numeric needs --y-value")
    try:
        return YMode.numeric(Fraction(args.y_value))
    except (ValueError, ZeroDivisionError):
        parser.error(f"Invalid --y-value: {args.y_value!r}")


def validate(parser, args):
    if args.threads < 1:
        parser.error(f"--threads must be at least 1, got {args.threads}")
    if args.order is not None and args.order < 0:
        parser.error(f"--order must be non-negative, got {args.order}")
    if args.command == "verify-all" and args.order is not None:
        parser.error("verify-all runs each check at its own order; --order is not accepted")
    if args.command in SERIES_COMMANDS:
        if args.rank < 1:
            parser.error(f"--rank must be at least 1, got {args.rank}")
        if not 0 <= args.k < args.rank:
            parser.error(f"--k must satisfy 0 <= k < rank, got k={args.k}, rank={args.rank}")


def write_report(payload, output=None):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text + "\n", encoding="utf-8")
        logging.info(f"Report written to {output}")
    else:
        print(text)


def _compute_series(args, y_mode, seeds, cache):
    """compute-z / compute-zhat at the first seed."""
    r, k = args.rank, args.k
    order = args.order if args.order is not None else 2 * r
    z_max_n, zhat_max_n = cutoffs(r, k, order)
    mode = Mode(args.mode)

    def compute(spec):
        if args.command == "compute-z":
            return compute_z(SeriesRequest(r, z_max_n, spec, mode), cache, args.threads)
        return compute_zhat(SeriesRequest(r, zhat_max_n, spec, mode, k), cache, args.threads)

    result, spec = retry_on_degenerate(compute, r, seeds[0], y_mode)
    max_n = z_max_n if args.command == "compute-z" else zhat_max_n
    kind = "z" if args.command == "compute-z" else "zhat"
    return series_report(kind, SeriesRequest(r, max_n, spec, mode, k), result, args.timing)


def _compute_yk(args, y_mode):
    order = args.order if args.order is not None else 2 * args.rank
    req = YkRequest(args.rank, args.k, order)
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "yk",
        "form": args.form,
        "parameters": {"rank": req.rank, "k": req.k, "order": req.order},
        "conventions": CONVENTIONS,
    }
    if args.form == "hol":
        comparison = yk_hol(req)
        report.update(
            {
                "stated": comparison.stated,
                "computed_at_y0": comparison.computed.format_terms(),
                "agrees": comparison.agrees,
            }
        )
        return report
    if args.form == "euler":
        y_mode = YMode.numeric(1)
        series = yk_euler(req)
    elif args.form == "gottsche":
        series = yk_gottsche(req, y_mode.field())
    else:
        series = yk_main(req, y_mode.field())
    report["y_mode"] = y_mode.label
    report["series"] = series.to_json()
    report["terms"] = series.format_terms()
    return report


def _compute_w(args, seeds):
    order = args.order if args.order is not None else DEFAULT_RANK1_ORDER
    substitution = SUBSTITUTIONS[args.substitution]
    series, spec = retry_on_degenerate(
        lambda s: w_series(WRequest(s, substitution, order)), 1, seeds[0], SYMBOLIC
    )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "w",
        "parameters": {"order": order, "substitution": substitution.label},
        "specialization": spec.to_dict(),
        "series": series.to_json(),
        "terms": series.format_terms(),
        "conventions": CONVENTIONS,
    }


def dispatch(args, parser):
    default_count = DEFAULT_RANK1_SEEDS if args.command in ("verify-rank1", "compute-w") else len(DEFAULT_SEEDS)
    seeds = resolve_seeds(parser, args.seeds, args.seed_base, default_count)
    cache_dir = get_cache_dir(args.cache_dir)
    cache = FixedPointCache(cache_dir) if cache_dir else None
    y_mode = resolve_y_mode(parser, args) if args.command in SERIES_COMMANDS else SYMBOLIC

    if args.command in ("compute-z", "compute-zhat"):
        return _compute_series(args, y_mode, seeds, cache), None
    if args.command == "compute-yk":
        return _compute_yk(args, y_mode), None
    if args.command == "compute-w":
        return _compute_w(args, seeds), None

    if args.command == "verify-rank1":
        order = args.order if args.order is not None else DEFAULT_RANK1_ORDER
        reports = [verify_rank1(order, seeds)]
    elif args.command == "verify-all":
        reports = verify_all(seeds=seeds, cache=cache, threads=args.threads)
    else:
        r, k = args.rank, args.k
        order = args.order if args.order is not None else 4 * r + k * (r - k)
        if args.command == "verify-blowup":
            reports = [
                verify_main_theorem(r, k, order, seeds, y_mode, Mode(args.mode), cache, args.threads)
            ]
        elif args.command == "verify-corollary":
            reports = [verify_corollary(r, k, order, seeds, cache, args.threads)]
        else:
            reports = [verify_limit_consistency(r, k, order, seeds, cache, args.threads)]

    log_summary(reports)
    if getattr(args, "html", None):
        report_builder.build_summary_page(reports, args.html, args.timing)
    payload = [report.to_dict(args.timing) for report in reports]
    return (payload[0] if len(payload) == 1 else payload), all(report.passed for report in reports)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        validate(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    setup_logging(args.log_file, args.log_level)
    logging.info(f"Running {args.command}")
    try:
        payload, passed = dispatch(args, parser)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except BlowupError as e:
        logging.error(f"{args.command} failed: {e}", exc_info=True)
        return 1

    write_report(payload, args.output)
    if passed is False:
        logging.error(f"{args.command}: verification failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
