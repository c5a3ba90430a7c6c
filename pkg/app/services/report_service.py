# app/services/report_service.py

"""
Ensamblado de informes y ejecución de suites.
Cada celda de la suite produce un IdentityReport; las celdas se ejecutan en
un pool de hilos y el informe se ensambla en orden de clave.
"""
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import ConfigError
from app.core.precision import mpf_dec
from app.models.character import PeriodicCharacter
from app.models.report import IdentityReport, ReportStatus, SuiteName, VerificationReport
from app.models.results import NumericCheck, XSeriesResult
from app.models.suite import SuiteConfig
from app.services.bailey import bailey_service
from app.services.characters import characters_service
from app.services.h_functions import h_function_service
from app.services.half_derivative import half_derivative_service
from app.services.lvalues import Terms, lvalue_service
from app.services.q_identities import q_identity_service
from app.services.unity import unity_service

logger = logging.getLogger(__name__)

Cell = Tuple[Tuple, Callable[[], IdentityReport]]


# ---------------------------------------------------------------------------
# Adaptadores a IdentityReport
# ---------------------------------------------------------------------------

def theorem_report(result: XSeriesResult) -> IdentityReport:
    report = IdentityReport(
        identity="half_derivative_theorem",
        parameters={"m": result.m, "a": result.a, "order": result.order},
        truncation={"t": result.order},
        data=result.as_dict(),
    )
    if result.passed:
        report.add_check("half_derivative_theorem", True, location=f"through t^{result.equal_through}")
    else:
        mismatch = report.data["mismatch"]
        report.add_check(
            "half_derivative_theorem",
            False,
            expected=mismatch["rhs"],
            actual=mismatch["lhs"],
            location=f"t^{mismatch['order']}",
        )
    return report


def numeric_report(check: NumericCheck, identity: Optional[str] = None) -> IdentityReport:
    report = IdentityReport(
        identity=identity or check.check_name,
        parameters={"label": check.label, "precision_bits": check.precision_bits},
        truncation={"terms": check.terms_used},
        data=check.as_dict(),
    )
    report.add_check(
        check.check_name,
        check.passed,
        expected=f"residual <= 2 * {mpf_dec(check.first_omitted, 6)}",
        actual=mpf_dec(check.residual, 6),
        location=check.label,
    )
    return report


def zagier_report(order: int) -> IdentityReport:
    """Caso m = 1: T(0) = 1, T(1) = 23 y la suma directa de (e^{-t})_n"""
    report = IdentityReport(identity="zagier_reduction", parameters={"order": order}, truncation={"t": order})
    t_values = lvalue_service.t_values(1, 0, 1)
    report.add_check("glaisher_t0", t_values[0] == 1, expected=1, actual=t_values[0])
    report.add_check("glaisher_t1", t_values[1] == 23, expected=23, actual=t_values[1])
    direct = half_derivative_service.zagier_direct_tseries(order)
    multisum = half_derivative_service.x_multisum_tseries(1, 0, order)
    d = direct.first_mismatch(multisum)
    report.add_check("zagier_direct_sum", d is None, location=f"through t^{order}" if d is None else f"t^{d}")
    return report


def mellin_report(chi: PeriodicCharacter, t0_values: Sequence, precision_bits: int, terms: Terms = "optimal") -> IdentityReport:
    """Comprobación de Mellin en cada t0 y residual decreciente al reducir t0"""
    report = IdentityReport(
        identity="mellin_asymptotics",
        parameters={"character": chi.summary(), "t0": [str(t) for t in t0_values], "precision_bits": precision_bits},
        truncation={"terms": terms},
    )
    checks = [lvalue_service.mellin_asymptotic_check(chi, Fraction(t0), terms, precision_bits) for t0 in t0_values]
    for check in checks:
        report.add_check(
            "mellin_asymptotics",
            check.passed,
            expected=f"residual <= 2 * {mpf_dec(check.first_omitted, 6)}",
            actual=mpf_dec(check.residual, 6),
            location=check.label,
        )
    by_t0 = sorted(zip((Fraction(t) for t in t0_values), checks), key=lambda pair: pair[0], reverse=True)
    residuals = [check.residual for _, check in by_t0]
    if len(residuals) > 1:
        report.add_check(
            "mellin_monotone",
            all(later < earlier for earlier, later in zip(residuals, residuals[1:])),
            actual=[mpf_dec(r, 6) for r in residuals],
        )
    report.data["checks"] = [check.as_dict() for check in checks]
    return report


def t_routes_report(m: int, n_max: int) -> IdentityReport:
    report = IdentityReport(identity="t_value_routes", parameters={"m": m, "n_max": n_max})
    for a in range(m):
        for n in range(n_max + 1):
            bernoulli = lvalue_service.t_value_bernoulli(m, a, n)
            genfun = lvalue_service.t_value_genfun(m, a, n)
            if bernoulli != genfun:
                report.add_check("t_value_routes", False, expected=genfun, actual=bernoulli, location=f"a={a} n={n}")
                return report
    report.add_check("t_value_routes", True, location=f"a <= {m - 1}, n <= {n_max}")
    return report


# ---------------------------------------------------------------------------
# Servicio
# ---------------------------------------------------------------------------

class ReportService:
    """Ejecución de comandos y suites con informes JSON reproducibles"""

    @staticmethod
    def worker_count() -> int:
        requested = settings.AGQ_THREADS or (os.cpu_count() or 1)
        return max(1, min(requested, settings.MAX_THREADS))

    def run_single(
        self,
        command: str,
        parameters: Dict,
        build: Callable[[], IdentityReport],
        seed: Optional[int] = None,
        precision_bits: Optional[int] = None,
    ) -> VerificationReport:
        start = time.perf_counter()
        report = VerificationReport(command=command, parameters=parameters, seed=seed, precision_bits=precision_bits)
        report.absorb(build())
        report.timing_ms = int((time.perf_counter() - start) * 1000)
        return report

    def load_suite_config(self, path: Optional[str]) -> SuiteConfig:
        """Fichero ausente: valores por defecto. Mal formado: ConfigError"""
        if not path:
            return SuiteConfig()
        file = Path(path)
        if not file.exists():
            logger.warning("suite config %s not found, using defaults", path)
            return SuiteConfig()
        try:
            raw = json.loads(file.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read suite config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"suite config {path} must be a JSON object")
        try:
            return SuiteConfig(**raw)
        except ValidationError as exc:
            raise ConfigError(f"invalid suite config {path}: {exc}") from exc

    # -- Celdas ---------------------------------------------------------------

    def formal_cells(self, cfg: SuiteConfig) -> List[Cell]:
        cells: List[Cell] = []
        for m in cfg.theorem_m:
            for a in range(m):
                cells.append(
                    (("formal", "theorem", m, a), lambda m=m, a=a: theorem_report(
                        half_derivative_service.verify_theorem(m, a, cfg.theorem_order)))
                )
        cells.append((("formal", "zagier", 1, 0), lambda: zagier_report(cfg.theorem_order)))
        for m in range(1, cfg.t_route_m_max + 1):
            cells.append((("formal", "t_routes", m, 0), lambda m=m: t_routes_report(m, cfg.t_route_n_max)))
        for m in cfg.ag_m:
            for a in range(m):
                cells.append((("formal", "andrews_gordon", m, a), lambda m=m, a=a: q_identity_service.verify_andrews_gordon(m, a, cfg.ag_q_order)))
                cells.append((("formal", "variant_ag", m, a), lambda m=m, a=a: q_identity_service.verify_variant_ag(m, a, cfg.ag_q_order)))
                cells.append((("formal", "h_at_unity", m, a), lambda m=m, a=a: q_identity_service.verify_H_at_unity(m, a, cfg.ag_q_order)))
        cells.append((("formal", "jacobi", 0, 0), lambda: q_identity_service.verify_jacobi_triple(cfg.jacobi_q_order, cfg.jacobi_x_range)))
        cells.append((("formal", "qbinomial", 0, 0), lambda: q_identity_service.verify_qbinomial_recurrences(cfg.qbinomial_n_max)))
        cells.append((("formal", "qbinomial_formula", 0, 0), lambda: q_identity_service.verify_qbinomial_formula(cfg.h_order)))
        order = cfg.h_order
        for m in range(1, cfg.h_m_max + 1):
            for a in range(m):
                cells.append((("formal", "h_closed", m, a), lambda m=m, a=a: h_function_service.verify_H_closed_form(m, a, order, order)))
                cells.append((("formal", "h_difference", m, a), lambda m=m, a=a: h_function_service.verify_H_difference_equation(m, a, order, order)))
                cells.append((("formal", "htilde", m, a), lambda m=m, a=a: h_function_service.verify_Htilde_difference(m, a, order, order)))
                cells.append((("formal", "h_lemma", m, a), lambda m=m, a=a: h_function_service.verify_H_lemma(m, a, order, order)))
        cells.append((("formal", "g_identities", 2, 1), lambda: h_function_service.verify_G_identities(order, order)))
        for m in range(1, cfg.bridge_m_max + 1):
            for a in range(m):
                cells.append((("formal", "bridge", m, a), lambda m=m, a=a: q_identity_service.verify_bridge_identity(m, a, cfg.bridge_q_order)))
        cells.append((("formal", "bc_lemma", 0, 0), lambda: q_identity_service.verify_bc_lemma(cfg.bc_a_max, cfg.bc_q_order)))
        cells.append(
            (("formal", "bailey", 0, 0), lambda: bailey_service.verify_bailey_machinery(
                cfg.bailey_n_max, cfg.bailey_samples, cfg.seed, cfg.bailey_q_order))
        )
        return cells

    def numeric_cells(self, cfg: SuiteConfig) -> List[Cell]:
        bits = cfg.precision_bits
        cells: List[Cell] = []
        cells.append((("numeric", "kashaev", 2, 0), lambda: unity_service.verify_kashaev(cfg.kashaev_n_max, bits)))
        for N in range(1, cfg.omega_n_max + 1):
            cells.append((("numeric", "omega", N, 0), lambda N=N: unity_service.verify_omega_identities(N, bits)))
        for m, a in cfg.asymptotic_cases:
            cells.append(
                (("numeric", "asymptotic", m, a), lambda m=m, a=a: unity_service.verify_asymptotics(
                    m, a, cfg.asymptotic_n, bits, "optimal"))
            )
            cells.append(
                (("numeric", "asymptotic_remainder", m, a), lambda m=m, a=a: numeric_report(
                    unity_service.asymptotic_check(m, a, max(cfg.asymptotic_n), bits, "optimal")))
            )
        for m in range(1, max(cfg.poisson_m_max, 6) + 1):
            cells.append((("numeric", "matrix", m, 0), lambda m=m: unity_service.verify_modular_matrix(m, bits)))
        for m in range(1, cfg.poisson_m_max + 1):
            for index, tau in enumerate(cfg.poisson_taus):
                cells.append((("numeric", "poisson", m, index), lambda m=m, tau=tau: unity_service.verify_poisson_modularity(m, tau, bits)))
        for m in cfg.nearly_modular_m:
            for N in cfg.nearly_modular_n:
                cells.append((("numeric", "nearly_modular", m, N), lambda m=m, N=N: unity_service.verify_nearly_modular(m, N, bits, "optimal")))
        characters = [characters_service.chi_12()] + [characters_service.chi_20(a) for a in range(2)]
        for index, chi in enumerate(characters):
            cells.append((("numeric", "mellin", index, 0), lambda chi=chi: mellin_report(chi, cfg.mellin_t0, bits)))
        return cells

    def cells_for(self, name: SuiteName, cfg: SuiteConfig) -> List[Cell]:
        name = SuiteName(name)
        cells: List[Cell] = []
        if name in (SuiteName.FORMAL, SuiteName.ALL):
            cells.extend(self.formal_cells(cfg))
        if name in (SuiteName.NUMERIC, SuiteName.ALL):
            cells.extend(self.numeric_cells(cfg))
        return cells

    def run_suite(self, name: SuiteName, cfg: SuiteConfig = None) -> VerificationReport:
        cfg = cfg or SuiteConfig()
        name = SuiteName(name)
        numeric = name != SuiteName.FORMAL
        report = VerificationReport(
            command=f"suite {name.value}",
            parameters=cfg.model_dump(),
            seed=cfg.seed if name != SuiteName.NUMERIC else None,
            precision_bits=cfg.precision_bits if numeric else None,
        )
        cells = sorted(self.cells_for(name, cfg), key=lambda cell: cell[0])
        start = time.perf_counter()

        def run(cell: Cell):
            key, build = cell
            try:
                result = build()
            except Exception as exc:  # la suite sigue con el resto de celdas
                logger.error("cell %s raised %s", key, exc)
                return key, None, f"{type(exc).__name__}: {exc}"
            logger.info("cell %s %s", key, "pass" if result.passed else "FAIL")
            return key, result, None

        with ThreadPoolExecutor(max_workers=self.worker_count()) as pool:
            outcomes = list(pool.map(run, cells))

        errors = []
        for key, result, error in outcomes:
            if error is not None:
                errors.append(f"{key}: {error}")
                continue
            report.absorb(result)
        if errors:
            report.status = ReportStatus.ERROR
            report.error = "; ".join(errors)
        report.timing_ms = int((time.perf_counter() - start) * 1000)
        logger.info("suite %s: %d cells, %d failures", name.value, len(cells), report.failure_count)
        return report


report_service = ReportService()
