# === File: src/cli.py ===

"""
Command line interface.

    polares <r-expr> <theta-expr> [--format text|json|svg|csv|all] [--out DIR]
            [--rcap R] [--thetacap T] [--kcap N] [--precision BITS] [--budget N]
            [--workers N] [--verify]

Exit codes: 0 success, 2 parse/validation/output error, 3 internal contradiction.
"""

import argparse
import sys
from typing import List, Optional

from config import (
    CERTIFICATION_BITS, K_CAP, LOG_LEVEL, MAX_WORKERS, OUTPUT_DIR, R_CAP, SAMPLING_BUDGET, THETA_CAP_PI_MULTIPLE,
)
from src.analysis.analyzer import AnalysisOptions, analyze
from src.exceptions import CurveSyntaxError, PolaresError
from src.logging_config import get_logger, setup_logging
from src.oracle.numeric import verify
from src.output.emitters import FORMATS, emit
from src.output.report import render_text
from src.output.sampling import sample_plan

logger = get_logger(__name__)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='polares',
        description='Exact analysis and plotting of rational polar curves (r(t), theta(t)).',
    )
    parser.add_argument('r', help='rational expression for r(t), e.g. "t/(1+t^2)"')
    parser.add_argument('theta', help='rational expression for theta(t)')
    parser.add_argument('--format', dest='formats', action='append', choices=list(FORMATS) + ['all'],
                        help='output format; repeatable (default: text)')
    parser.add_argument('--out', default=OUTPUT_DIR, help=f'output directory (default: {OUTPUT_DIR})')
    parser.add_argument('--rcap', type=_positive_float, default=R_CAP, help=f'plot cap on |r| (default: {R_CAP:g})')
    parser.add_argument('--thetacap', type=_positive_int, default=THETA_CAP_PI_MULTIPLE,
                        help=f'plot cap on |theta| as a multiple of pi (default: {THETA_CAP_PI_MULTIPLE})')
    parser.add_argument('--kcap', type=_positive_int, default=K_CAP,
                        help=f'|k| solved for infinite families (default: {K_CAP})')
    parser.add_argument('--precision', type=_positive_int, default=CERTIFICATION_BITS,
                        help=f'bits of certified solution boxes (default: {CERTIFICATION_BITS})')
    parser.add_argument('--budget', type=_positive_int, default=SAMPLING_BUDGET,
                        help=f'samples per plot interval (default: {SAMPLING_BUDGET})')
    parser.add_argument('--workers', type=_positive_int, default=MAX_WORKERS,
                        help=f'parallel workers for solving and sampling (default: {MAX_WORKERS})')
    parser.add_argument('--verify', action='store_true', help='cross-check with the numeric oracle')
    parser.add_argument('--log-level', default=LOG_LEVEL, help=f'log level (default: {LOG_LEVEL})')
    return parser


def _syntax_message(error: CurveSyntaxError) -> str:
    if error.text is None:
        return str(error)
    return f"{error}\n  {error.text}\n  {' ' * (error.position - 1)}^"


def run(args: argparse.Namespace) -> int:
    options = AnalysisOptions(
        k_cap=args.kcap,
        r_cap=args.rcap,
        theta_cap_multiple=args.thetacap,
        certification_bits=args.precision,
        budget=args.budget,
        workers=args.workers,
    )
    formats = args.formats or ['text']

    analysis = analyze(args.r, args.theta, options)
    if args.verify:
        analysis.verification.extend(verify(analysis))

    needs_samples = any(f in ('svg', 'csv', 'all') for f in formats)
    artifacts = sample_plan(analysis.curve, analysis.plan, options.budget, options.r_cap,
                            options.workers) if needs_samples else []
    emit(analysis, artifacts, formats, args.out, workers=options.workers)

    if 'text' in formats or 'all' in formats:
        sys.stdout.write(render_text(analysis))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level)
    try:
        return run(args)
    except CurveSyntaxError as e:
        sys.stderr.write(_syntax_message(e) + '\n')
        return e.exit_code
    except PolaresError as e:
        logger.error(f"polares failed: {e}")
        sys.stderr.write(f"{e}\n")
        return e.exit_code
