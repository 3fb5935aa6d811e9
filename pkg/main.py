"""
CPC Independence Test entry point.
"""
import logging
import sys

from app.command.cli import main
from app.core.config import settings

logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    stream=sys.stderr,
)

if __name__ == "__main__":
    sys.exit(main())
