# app/api/evaluate.py

"""Subcomandos de evaluación directa: kashaev, t-value, l-value"""
import argparse

from app.api.deps import add_output_flags, emit
from app.core.config import settings
from app.core.precision import complex_payload, complex_summary
from app.core.rationals import format_rational
from app.models.report import IdentityReport
from app.services.characters import characters_service
from app.services.lvalues import lvalue_service
from app.services.report_service import report_service
from app.services.unity import unity_service


def register(subparsers) -> None:
    kashaev = subparsers.add_parser("kashaev", help="evaluate X_m^(a) at exp(2 pi i / N)")
    kashaev.add_argument("--m", type=int, default=1)
    kashaev.add_argument("--a", type=int, default=0)
    kashaev.add_argument("--N", type=int, required=True)
    kashaev.add_argument("--precision", type=int, default=settings.DEFAULT_PRECISION_BITS)
    kashaev.add_argument("--double-sum", action="store_true", help="use the (5,2) torus knot double sum")
    add_output_flags(kashaev)
    kashaev.set_defaults(handler=run_kashaev)

    t_value = subparsers.add_parser("t-value", help="exact T_m^(a)(n)")
    t_value.add_argument("--m", type=int, required=True)
    t_value.add_argument("--a", type=int, default=0)
    t_value.add_argument("--n", type=int, required=True)
    t_value.add_argument("--route", choices=("bernoulli", "genfun"), default="bernoulli")
    add_output_flags(t_value)
    t_value.set_defaults(handler=run_t_value)

    l_value = subparsers.add_parser("l-value", help="exact L(-2n-1, chi)")
    l_value.add_argument("--m", type=int, default=1)
    l_value.add_argument("--a", type=int, default=0)
    l_value.add_argument("--n", type=int, required=True)
    add_output_flags(l_value)
    l_value.set_defaults(handler=run_l_value)


def run_kashaev(args: argparse.Namespace) -> int:
    def build() -> IdentityReport:
        if args.double_sum:
            value = unity_service.kashaev_double_sum(args.N, args.precision)
        else:
            value = unity_service.eval_x_unity(args.m, args.a, args.N, args.precision)
        result = IdentityReport(
            identity="kashaev_value",
            parameters={"m": args.m, "a": args.a, "N": args.N, "double_sum": args.double_sum},
            data={"value": complex_payload(value)},
        )
        result.add_check("kashaev_value", True)
        return result

    report = report_service.run_single(
        command="kashaev",
        parameters={"m": args.m, "a": args.a, "N": args.N, "double_sum": args.double_sum},
        build=build,
        precision_bits=args.precision,
    )
    value = report.results[0]["data"]["value"]
    return emit(report, args, summary=complex_summary(value))


def run_t_value(args: argparse.Namespace) -> int:
    def build() -> IdentityReport:
        value = lvalue_service.t_value(args.m, args.a, args.n, args.route)
        result = IdentityReport(identity="t_value", parameters={"m": args.m, "a": args.a, "n": args.n}, data=value.as_dict())
        result.add_check("t_value", True)
        return result

    report = report_service.run_single("t-value", {"m": args.m, "a": args.a, "n": args.n, "route": args.route}, build)
    return emit(report, args, summary=report.results[0]["data"]["value"])


def run_l_value(args: argparse.Namespace) -> int:
    def build() -> IdentityReport:
        chi = characters_service.chi_general(args.m, args.a)
        value = lvalue_service.l_value_negative(chi, args.n)
        result = IdentityReport(
            identity="l_value",
            parameters={"character": chi.summary(), "n": args.n},
            data={"s": -2 * args.n - 1, "value": format_rational(value)},
        )
        result.add_check("l_value", True)
        return result

    report = report_service.run_single("l-value", {"m": args.m, "a": args.a, "n": args.n}, build)
    return emit(report, args, summary=report.results[0]["data"]["value"])
