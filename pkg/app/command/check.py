"""
`check`: oracle suite. Exits nonzero when any oracle fails.
"""
import argparse
import logging

from app.core.config import settings
from app.core.exceptions import EXIT_NUMERIC, EXIT_OK
from app.simlab.oracles import run_check as run_oracles
from app.utils.output import write_text

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Run the oracle and diagnostic suite.")
    parser.add_argument("--fast", action="store_true", help="Reduced instance counts.")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--output", help="Write the JSON report here instead of stdout.")
    parser.set_defaults(handler=run_check)


def run_check(args: argparse.Namespace) -> int:
    report = run_oracles(fast=args.fast, seed=args.seed)
    if args.output:
        write_text(args.output, report.to_json())
    else:
        print(report.to_json())
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        logger.error("failed checks: %s", ", ".join(failed))
        return EXIT_NUMERIC
    return EXIT_OK
