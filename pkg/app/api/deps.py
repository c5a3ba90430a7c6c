# app/api/deps.py

"""Flags compartidos por los subcomandos y salida de informes"""
import argparse
import sys
from fractions import Fraction
from pathlib import Path

from app.core.config import settings
from app.core.rationals import parse_rational
from app.models.report import ReportStatus, VerificationReport

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def terms_arg(text: str):
    """--tail: entero >= 0 u 'optimal'"""
    if text == "optimal":
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'optimal', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"tail terms must be >= 0, got {value}")
    return value


def rational_arg(text: str) -> Fraction:
    try:
        return Fraction(parse_rational(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    parser.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")


def add_math_flags(parser: argparse.ArgumentParser) -> None:
    """Flags de parámetros comunes a casi todos los verificadores"""
    parser.add_argument("--m", type=int, default=2)
    parser.add_argument("--a", type=int, default=0)
    parser.add_argument("--order", type=int, default=None, help="t-, q- or joint (x, q) truncation order")
    parser.add_argument("--N", type=int, default=10, help="root of unity order")
    parser.add_argument("--n-max", type=int, default=None)
    parser.add_argument("--precision", type=int, default=settings.DEFAULT_PRECISION_BITS, help="precision in bits")
    parser.add_argument("--tail", type=terms_arg, default="optimal", help="tail terms (integer or 'optimal')")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)


def exit_code(report: VerificationReport) -> int:
    if report.status == ReportStatus.PASS:
        return EXIT_PASS
    if report.status == ReportStatus.FAIL:
        return EXIT_FAIL
    return EXIT_USAGE


def emit(report: VerificationReport, args: argparse.Namespace, summary: str = None) -> int:
    """Escribir el informe (JSON en stdout si --json) y devolver el código de salida"""
    document = report.canonical_json()
    if getattr(args, "out", None):
        Path(args.out).write_text(document + "\n", encoding="utf-8")
    if getattr(args, "json", False):
        sys.stdout.write(document + "\n")
    else:
        if summary:
            print(summary)
        print(f"{report.command}: {report.status.value} ({len(report.details)} checks, {report.timing_ms} ms)")
        for detail in report.details:
            if not detail.passed:
                print(f"  FAIL {detail.check_name} [{detail.reference}] at {detail.location}: expected {detail.expected}, got {detail.actual}")
        if report.error:
            print(f"  ERROR {report.error}")
    return exit_code(report)
