"""
Command-line parser: one subcommand per module.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from app.command import bench, calibrate, check, simulate, test
from app.core.config import settings
from app.core.exceptions import EXIT_NUMERIC, AppException

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpc", description=settings.PROJECT_NAME)
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (test, simulate, calibrate, bench, check):
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse, dispatch and map failures to exit codes (2 usage, 3 data, 4 numeric)."""
    args = build_parser().parse_args(argv)
    logging.getLogger().setLevel(args.log_level.upper())
    try:
        return args.handler(args)
    except AppException as e:
        logger.error("%s: %s", e.code, e.message)
        sys.stderr.write(json.dumps(e.detail) + "\n")
        return e.exit_code
    except Exception as e:
        logger.exception("Uncaught exception: %s", e)
        return EXIT_NUMERIC
