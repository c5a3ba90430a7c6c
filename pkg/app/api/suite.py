# app/api/suite.py

import argparse

from app.api.deps import add_output_flags, emit
from app.models.report import SuiteName
from app.services.report_service import report_service


def register(subparsers) -> None:
    parser = subparsers.add_parser("suite", help="run an acceptance suite")
    parser.add_argument("name", choices=[s.value for s in SuiteName])
    parser.add_argument("--config", metavar="FILE", help="JSON suite configuration (defaults when absent)")
    add_output_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Ejecutar la suite completa; ConfigError llega a main como error de uso"""
    config = report_service.load_suite_config(args.config)
    report = report_service.run_suite(SuiteName(args.name), config)
    return emit(report, args)
