# app/api/verify.py

"""Subcomando `verify <target>`: un verificador por identidad"""
import argparse
from typing import Callable, Dict

from app.api.deps import add_math_flags, add_output_flags, emit, rational_arg
from app.core.config import settings
from app.models.report import IdentityReport
from app.services.bailey import bailey_service
from app.services.characters import characters_service
from app.services.h_functions import h_function_service
from app.services.half_derivative import half_derivative_service
from app.services.q_identities import q_identity_service
from app.services.report_service import (
    mellin_report,
    numeric_report,
    report_service,
    t_routes_report,
    theorem_report,
)
from app.services.unity import unity_service

Handler = Callable[[argparse.Namespace], IdentityReport]


def _order(args, default: int) -> int:
    return default if args.order is None else args.order


def _n_max(args, default: int) -> int:
    return default if args.n_max is None else args.n_max


def _character(args):
    if args.character == "chi12":
        return characters_service.chi_12()
    if args.character == "chi20":
        return characters_service.chi_20(args.a)
    return characters_service.chi_general(args.m, args.a)


TARGETS: Dict[str, Handler] = {
    # t-expansiones
    "theorem": lambda args: theorem_report(
        half_derivative_service.verify_theorem(args.m, args.a, _order(args, settings.DEFAULT_ORDER))),
    "routes": lambda args: t_routes_report(args.m, _n_max(args, 20)),
    "half-derivative": lambda args: numeric_report(
        half_derivative_service.half_derivative_numeric_check(args.m, args.a, args.t0, args.tail, args.precision)),
    "mellin": lambda args: mellin_report(_character(args), [args.t0], args.precision, args.tail),
    # identidades q exactas
    "andrews-gordon": lambda args: q_identity_service.verify_andrews_gordon(args.m, args.a, _order(args, 60)),
    "variant-ag": lambda args: q_identity_service.verify_variant_ag(args.m, args.a, _order(args, 60)),
    "jacobi": lambda args: q_identity_service.verify_jacobi_triple(_order(args, 40), args.x_range),
    "qbinomial": lambda args: q_identity_service.verify_qbinomial_recurrences(_n_max(args, 12)),
    "qbinomial-formula": lambda args: q_identity_service.verify_qbinomial_formula(_order(args, 12)),
    "h-unity": lambda args: q_identity_service.verify_H_at_unity(args.m, args.a, _order(args, 60)),
    "bridge": lambda args: q_identity_service.verify_bridge_identity(args.m, args.a, _order(args, 25)),
    "bc-lemma": lambda args: q_identity_service.verify_bc_lemma(_n_max(args, 8), _order(args, 40)),
    "bailey": lambda args: bailey_service.verify_bailey_machinery(
        _n_max(args, 6), args.samples, args.seed, _order(args, settings.DEFAULT_Q_ORDER)),
    # funciones H
    "h-closed": lambda args: h_function_service.verify_H_closed_form(
        args.m, args.a, _order(args, 12), _order(args, 12)),
    "h-difference": lambda args: h_function_service.verify_H_difference_equation(
        args.m, args.a, _order(args, 12), _order(args, 12)),
    "htilde": lambda args: h_function_service.verify_Htilde_difference(
        args.m, args.a, _order(args, 12), _order(args, 12)),
    "h-lemma": lambda args: h_function_service.verify_H_lemma(args.m, args.a, _order(args, 12), _order(args, 12)),
    "g-identities": lambda args: h_function_service.verify_G_identities(_order(args, 12), _order(args, 12)),
    # raíces de la unidad y modularidad
    "kashaev": lambda args: unity_service.verify_kashaev(_n_max(args, args.N), args.precision),
    "omega": lambda args: unity_service.verify_omega_identities(args.N, args.precision),
    "asymptotic": lambda args: numeric_report(
        unity_service.asymptotic_check(args.m, args.a, args.N, args.precision, args.tail)),
    "matrix": lambda args: unity_service.verify_modular_matrix(args.m, args.precision),
    "poisson": lambda args: unity_service.verify_poisson_modularity(args.m, tuple(args.tau), args.precision),
    "nearly-modular": lambda args: unity_service.verify_nearly_modular(args.m, args.N, args.precision, args.tail),
}

SEEDED = {"bailey"}
NUMERIC = {"half-derivative", "mellin", "kashaev", "omega", "asymptotic", "matrix", "poisson", "nearly-modular"}


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run one identity verifier")
    parser.add_argument("target", choices=sorted(TARGETS))
    add_math_flags(parser)
    parser.add_argument("--t0", type=rational_arg, default=rational_arg("1/100"))
    parser.add_argument("--x-range", type=int, default=20)
    parser.add_argument("--samples", type=int, default=settings.BAILEY_SAMPLES)
    parser.add_argument("--tau", type=rational_arg, nargs=2, metavar=("RE", "IM"), default=[rational_arg("0"), rational_arg("1")])
    parser.add_argument("--character", choices=("chi12", "chi20", "general"), default="chi12")
    add_output_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Ejecutar un verificador y emitir su informe"""
    parameters = {
        key: (str(value) if not isinstance(value, (int, str, type(None))) else value)
        for key, value in vars(args).items()
        if key not in ("handler", "json", "out", "command")
    }
    report = report_service.run_single(
        command=f"verify {args.target}",
        parameters=parameters,
        build=lambda: TARGETS[args.target](args),
        seed=args.seed if args.target in SEEDED else None,
        precision_bits=args.precision if args.target in NUMERIC else None,
    )
    return emit(report, args)

