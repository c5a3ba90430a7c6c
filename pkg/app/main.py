# app/main.py

import argparse
import logging
import sys
from typing import List, Optional

from app.api import evaluate, suite, verify
from app.api.deps import EXIT_USAGE, emit
from app.core.config import settings
from app.core.errors import VerificationError
from app.core.logger import setup_logging
from app.models.report import ReportStatus, VerificationReport

logger = logging.getLogger("app.main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m app.main",
        description=f"{settings.PROJECT_NAME} {settings.VERSION}",
    )
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Registrar subcomandos
    for module in (verify, evaluate, suite):
        module.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        return args.handler(args)
    except (VerificationError, ValueError) as exc:
        logger.error("%s", exc)
        report = VerificationReport(
            command=" ".join(argv if argv is not None else sys.argv[1:]),
            status=ReportStatus.ERROR,
            error=f"{type(exc).__name__}: {exc}",
        )
        emit(report, args)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
