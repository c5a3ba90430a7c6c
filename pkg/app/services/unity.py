# app/services/unity.py

"""
Evaluación de X_m^(a) en raíces de la unidad (invariantes de Kashaev de
los nudos tóricos (2, 2m+1)), expansión asintótica, matriz modular,
funciones theta Phi_m^(a) y la propiedad casi modular.
"""
import logging
from fractions import Fraction
from typing import List, Sequence

from app.core.config import settings
from app.core.errors import check_ma, require
from app.core.precision import complex_payload, make_context, mpf_dec, to_mp
from app.models.report import IdentityReport
from app.models.results import ModularMatrix, NumericCheck, ThetaVector
from app.services.characters import characters_service
from app.services.lvalues import Terms, lvalue_service, theta_moment_sum, truncated_sum
from app.services.qseries import ScalarRing, fold_chain

logger = logging.getLogger(__name__)

# holgura (en bits) de las tolerancias numéricas respecto a la precisión pedida
TOLERANCE_SLACK_BITS = 56
OMEGA_SLACK_BITS = 8


class OmegaTable:
    """
    omega = e^{2 pi i / N}, sus potencias y (omega)_0 .. (omega)_{N-1},
    calculadas una vez y compartidas en solo lectura
    """

    def __init__(self, ctx, N: int):
        self.ctx = ctx
        self.N = N
        self.powers = [ctx.expjpi(ctx.mpf(2 * j) / N) for j in range(N)]
        self.pochhammer = [ctx.mpc(1)]
        for i in range(1, N):
            self.pochhammer.append(self.pochhammer[-1] * (1 - self.powers[i]))

    def power(self, e: int):
        return self.powers[e % self.N]

    def binomial(self, n: int, c: int):
        """[n over c] en omega; n = N se resuelve con [N over c] = 0 para 0 < c < N"""
        ctx = self.ctx
        if c < 0 or c > n:
            return ctx.mpc(0)
        if n >= self.N:
            return ctx.mpc(1) if c in (0, n) else ctx.mpc(0)
        poch = self.pochhammer
        return poch[n] / (poch[c] * poch[n - c])


def _unity_context(precision_bits: int, N: int):
    # los omega-binomiales dividen por (omega)_c, de módulo pequeño
    return make_context(precision_bits, N // 2)


def _tau(ctx, tau):
    """tau como mpc; acepta un par (re, im) de racionales"""
    if isinstance(tau, (tuple, list)):
        re, im = tau
        return ctx.mpc(to_mp(ctx, Fraction(re)), to_mp(ctx, Fraction(im)))
    return ctx.mpc(tau)


class UnityService:
    """Evaluaciones numéricas de precisión arbitraria en raíces de la unidad"""

    # -- Kashaev ------------------------------------------------------------

    def omega_table(self, N: int, precision_bits: int = None) -> OmegaTable:
        require(N >= 1, f"N must be >= 1, got {N}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        return OmegaTable(_unity_context(bits, N), N)

    def eval_x_unity(self, m: int, a: int, N: int, precision_bits: int = None, table: OmegaTable = None):
        """
        X_m^(a)(omega): la suma es finita porque (omega)_{k_m} = 0 para k_m >= N
        """
        check_ma(m, a)
        require(N >= 1, f"N must be >= 1, got {N}")
        table = table or self.omega_table(N, precision_bits)
        ctx = table.ctx
        inner = fold_chain(
            length=m,
            top_max=N - 1,
            slack_link=a,
            weight=lambda i, k: table.power(k * k + (k if i > a else 0)),
            bracket=table.binomial,
            ring=ScalarRing(ctx.mpc(0), ctx.mpc(1)),
        )
        return ctx.fsum(table.pochhammer[k] * value for k, value in enumerate(inner))

    def kashaev_double_sum(self, N: int, precision_bits: int = None, table: OmegaTable = None):
        """sum_{a+b <= N-1} (omega)_{a+b} omega^{-ab}"""
        require(N >= 1, f"N must be >= 1, got {N}")
        table = table or self.omega_table(N, precision_bits)
        return table.ctx.fsum(
            table.pochhammer[i + j] * table.power(-i * j)
            for i in range(N)
            for j in range(N - i)
        )

    def verify_kashaev(self, n_max: int, precision_bits: int = None) -> IdentityReport:
        """X_2^(0)(omega) contra la doble suma de Kashaev para N <= n_max"""
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        report = IdentityReport(
            identity="kashaev_double_sum",
            parameters={"n_max": n_max, "precision_bits": bits},
            truncation={"N": n_max},
        )
        worst = None
        for N in range(1, n_max + 1):
            table = self.omega_table(N, bits)
            ctx = table.ctx
            nested = self.eval_x_unity(2, 0, N, bits, table)
            double = self.kashaev_double_sum(N, bits, table)
            relative = abs(nested - double) / max(abs(double), ctx.mpf(1))
            worst = relative if worst is None else max(worst, relative)
            if relative > ctx.ldexp(1, -(bits // 2)):
                report.add_check("kashaev_double_sum", False, expected=complex_payload(double, 20), actual=complex_payload(nested, 20), location=f"N={N}")
                return report
        report.add_check("kashaev_double_sum", True, location=f"N <= {n_max}")
        report.data["max_relative_residual"] = mpf_dec(worst, 12)
        return report

    def verify_omega_identities(self, N: int, precision_bits: int = None) -> IdentityReport:
        """(omega)_{N-1} = N, conj((omega)_a)(omega)_{N-1-a} = N, sum_b (omega)_b/(omega)_{b-a} = N"""
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        table = self.omega_table(N, bits)
        ctx = table.ctx
        poch = table.pochhammer
        tol = N * ctx.ldexp(1, -bits + OMEGA_SLACK_BITS)
        report = IdentityReport(
            identity="omega_identities",
            parameters={"N": N, "precision_bits": bits},
            truncation={"N": N},
        )

        residual = abs(poch[N - 1] - N)
        report.add_check("omega_pochhammer_top", residual <= tol, expected=N, actual=complex_payload(poch[N - 1], 20), location="a=N-1")

        checks = (
            ("omega_conjugate_product", lambda a: ctx.conj(poch[a]) * poch[N - 1 - a]),
            ("omega_ratio_sum", lambda a: ctx.fsum(poch[b] / poch[b - a] for b in range(a, N))),
        )
        for name, evaluate in checks:
            for a in range(N):
                value = evaluate(a)
                if abs(value - N) > tol:
                    report.add_check(name, False, expected=N, actual=complex_payload(value, 20), location=f"a={a}")
                    break
            else:
                report.add_check(name, True, location=f"0 <= a <= {N - 1}")
        return report

    # -- Asintótica ---------------------------------------------------------

    def _tail(self, ctx, m: int, a: int, N: int, terms: Terms):
        """sum_n T(n)/n! (pi / (4(2m+1) N i))^n: (suma, primer omitido, usados)"""
        step = ctx.pi / (4 * (2 * m + 1) * N * ctx.j)

        def term(n: int):
            return to_mp(ctx, lvalue_service.t_value_genfun(m, a, n)) / ctx.factorial(n) * step ** n

        if terms == 0:
            return ctx.mpc(0), term(0), 0
        return truncated_sum(ctx, term, terms)

    def geometric_block(self, ctx, m: int, a: int, N: int):
        """Bloque principal de orden N^{3/2}"""
        c = characters_service.offset(m, a)
        w = 2 * m + 1
        total = ctx.mpc(0)
        for k in range(m):
            total += (
                (-1) ** k * (m - k)
                * ctx.sin((a + 1) * (2 * k + 1) * ctx.pi / w)
                * ctx.expjpi(-ctx.mpf(N * (2 * k + 1) ** 2) / (4 * w))
            )
        phase = ctx.expjpi(ctx.mpf(1) / 4 - ctx.mpf(c * c) / (4 * w * N))
        return 2 / ctx.sqrt(w) * ctx.mpf(N) ** ctx.mpf(1.5) * phase * total

    def _asymptotic_parts(self, ctx, m: int, a: int, N: int, terms: Terms):
        c = characters_service.offset(m, a)
        shift = ctx.expjpi(-ctx.mpf(c * c) / (4 * (2 * m + 1) * N))
        tail, omitted, used = self._tail(ctx, m, a, N, terms)
        return self.geometric_block(ctx, m, a, N), shift * tail, abs(omitted), used

    def asymptotic_rhs(self, m: int, a: int, N: int, precision_bits: int = None, terms: Terms = "optimal"):
        check_ma(m, a)
        require(N >= 1, f"N must be >= 1, got {N}")
        ctx = _unity_context(precision_bits or settings.DEFAULT_PRECISION_BITS, N)
        geometric, tail, _, _ = self._asymptotic_parts(ctx, m, a, N, terms)
        return geometric + tail

    def asymptotic_check(self, m: int, a: int, N: int, precision_bits: int = None, terms: Terms = "optimal") -> NumericCheck:
        """X_m^(a)(omega) contra la expansión asintótica truncada"""
        check_ma(m, a)
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        table = self.omega_table(N, bits)
        ctx = table.ctx
        lhs = self.eval_x_unity(m, a, N, bits, table)
        geometric, tail, omitted, used = self._asymptotic_parts(ctx, m, a, N, terms)
        rhs = geometric + tail
        return NumericCheck(
            check_name="asymptotic_expansion",
            label=f"m={m} a={a} N={N}",
            lhs=lhs,
            rhs=rhs,
            residual=abs(lhs - rhs),
            first_omitted=omitted,
            terms_used=used,
            precision_bits=bits,
        )

    def verify_asymptotics(
        self,
        m: int,
        a: int,
        n_values: Sequence[int],
        precision_bits: int = None,
        terms: Terms = "optimal",
    ) -> IdentityReport:
        """Error relativo estrictamente decreciente en N y cociente con el bloque principal"""
        check_ma(m, a)
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        n_values = sorted(n_values)
        report = IdentityReport(
            identity="asymptotic_expansion",
            parameters={"m": m, "a": a, "N": n_values, "precision_bits": bits, "terms": terms},
            truncation={"tail": terms},
        )
        relative = []
        rows = []
        for N in n_values:
            check = self.asymptotic_check(m, a, N, bits, terms)
            relative.append(check.residual / abs(check.lhs))
            row = check.as_dict()
            row["relative_residual"] = mpf_dec(relative[-1], 12)
            rows.append(row)
        report.data["evaluations"] = rows

        decreasing = all(later < earlier for earlier, later in zip(relative, relative[1:]))
        report.add_check(
            "asymptotic_monotone",
            decreasing,
            actual=[mpf_dec(r, 6) for r in relative],
            location=f"N in {n_values}",
        )
        N = n_values[-1]
        if N >= 100:
            ctx = _unity_context(bits, N)
            ratio = abs(self.eval_x_unity(m, a, N, bits)) / abs(self.geometric_block(ctx, m, a, N))
            report.add_check(
                "leading_order_ratio",
                abs(ratio - 1) < ctx.mpf(1) / 100,
                expected="1 +- 1%",
                actual=mpf_dec(ratio, 10),
                location=f"N={N}",
            )
        return report

    # -- Modularidad --------------------------------------------------------

    def modular_matrix(self, m: int, precision_bits: int = None, ctx=None) -> ModularMatrix:
        require(m >= 1, f"m must be >= 1, got {m}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = ctx or make_context(bits)
        w = 2 * m + 1
        scale = 2 / ctx.sqrt(w)
        entries = [
            [scale * ctx.cos(ctx.mpf((2 * p - 1) * (2 * q - 1)) * ctx.pi / (2 * w)) for q in range(1, m + 1)]
            for p in range(1, m + 1)
        ]
        return ModularMatrix(m=m, entries=entries, precision_bits=bits)

    def verify_modular_matrix(self, m: int, precision_bits: int = None) -> IdentityReport:
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        matrix = self.modular_matrix(m, bits)
        ctx = make_context(bits)
        tol = m * m * ctx.ldexp(1, -bits + OMEGA_SLACK_BITS)
        report = IdentityReport(identity="modular_matrix", parameters={"m": m, "precision_bits": bits})
        square = matrix.square_residual()
        symmetry = matrix.symmetry_residual()
        report.add_check("matrix_involution", square < tol, actual=mpf_dec(ctx.mpf(square), 6))
        report.add_check("matrix_symmetric", symmetry < tol, actual=mpf_dec(ctx.mpf(symmetry), 6))
        return report

    def theta_phi(self, m: int, a: int, tau, precision_bits: int = None, ctx=None):
        """Phi_m^(a)(tau) = sum_{n>=0} chi(n) e^{2 pi i tau n^2 / 8(2m+1)}"""
        check_ma(m, a)
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = ctx or make_context(bits)
        tau = _tau(ctx, tau)
        require(ctx.im(tau) > 0, f"Im(tau) must be > 0, got {ctx.im(tau)}")
        chi = characters_service.chi_general(m, a)
        scale = 2 * ctx.pi * ctx.j * tau / characters_service.level(m)
        return theta_moment_sum(ctx, chi, lambda n: scale * n * n, bits)

    def theta_vector(self, m: int, tau, precision_bits: int = None, ctx=None) -> ThetaVector:
        """(Phi_m^(m-1), ..., Phi_m^(0))"""
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = ctx or make_context(bits)
        return ThetaVector(m=m, components=[self.theta_phi(m, a, tau, bits, ctx) for a in range(m - 1, -1, -1)])

    def verify_poisson_modularity(self, m: int, tau, precision_bits: int = None) -> IdentityReport:
        """Phi_m(tau) = sqrt(i/tau) M Phi_m(-1/tau) y la fase de Phi(tau + 1)"""
        require(m >= 1, f"m must be >= 1, got {m}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = make_context(bits)
        t = _tau(ctx, tau)
        require(ctx.im(t) > 0, f"Im(tau) must be > 0, got {ctx.im(t)}")
        report = IdentityReport(
            identity="poisson_modularity",
            parameters={"m": m, "tau": [mpf_dec(ctx.re(t), 20), mpf_dec(ctx.im(t), 20)], "precision_bits": bits},
        )
        direct = self.theta_vector(m, t, bits, ctx)
        inverted = self.theta_vector(m, -1 / t, bits, ctx)
        matrix = self.modular_matrix(m, bits, ctx)
        factor = ctx.sqrt(ctx.j / t)
        transformed = [factor * v for v in matrix.apply(inverted.components)]
        residual = max(abs(u - v) for u, v in zip(direct.components, transformed))
        scale = max(ctx.mpf(1), max(abs(u) for u in direct.components))
        tol = scale * ctx.ldexp(1, -bits + TOLERANCE_SLACK_BITS)
        report.add_check("poisson_modularity", residual <= tol, actual=mpf_dec(residual, 6), location=f"m={m}")
        report.data["residual"] = mpf_dec(residual, 12)
        report.data["theta"] = direct.as_dict()

        shifted = self.theta_vector(m, t + 1, bits, ctx)
        worst = ctx.mpf(0)
        for p, a in enumerate(range(m - 1, -1, -1)):
            c = characters_service.offset(m, a)
            phase = ctx.expjpi(ctx.mpf(c * c) / (4 * (2 * m + 1)))
            worst = max(worst, abs(shifted.components[p] - phase * direct.components[p]))
        report.add_check("theta_period_phase", worst <= tol, actual=mpf_dec(worst, 6))
        return report

    def nearly_modular_checks(self, m: int, N: int, precision_bits: int = None, terms: Terms = "optimal") -> List[NumericCheck]:
        """
        Componente a de Phi~(1/N) + (-iN)^{3/2} M Phi~(-N) contra la serie de
        T-valores, con X_m^(a)(1) = a + 1 (en q = 1 solo sobrevive k_m = 0)
        """
        require(m >= 1, f"m must be >= 1, got {m}")
        require(N >= 1, f"N must be >= 1, got {N}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        table = self.omega_table(N, bits)
        ctx = table.ctx
        w = 2 * m + 1
        order = list(range(m - 1, -1, -1))

        at_rational = []
        at_integer = []
        for a in order:
            c = characters_service.offset(m, a)
            at_rational.append(ctx.expjpi(ctx.mpf(c * c) / (4 * N * w)) * self.eval_x_unity(m, a, N, bits, table))
            at_integer.append(ctx.expjpi(-ctx.mpf(N * c * c) / (4 * w)) * (a + 1))

        matrix = self.modular_matrix(m, bits, ctx)
        # (-iN)^{3/2} en la rama principal
        weight = ctx.mpf(N) ** ctx.mpf(1.5) * ctx.expjpi(ctx.mpf(-3) / 4)
        lhs = [u + weight * v for u, v in zip(at_rational, matrix.apply(at_integer))]

        checks = []
        for p, a in enumerate(order):
            tail, omitted, used = self._tail(ctx, m, a, N, terms)
            checks.append(
                NumericCheck(
                    check_name="nearly_modular",
                    label=f"m={m} a={a} N={N}",
                    lhs=lhs[p],
                    rhs=tail,
                    residual=abs(lhs[p] - tail),
                    first_omitted=abs(omitted),
                    terms_used=used,
                    precision_bits=bits,
                )
            )
        return checks

    def verify_nearly_modular(self, m: int, N: int, precision_bits: int = None, terms: Terms = "optimal") -> IdentityReport:
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        report = IdentityReport(
            identity="nearly_modular",
            parameters={"m": m, "N": N, "precision_bits": bits, "terms": terms},
            truncation={"tail": terms},
        )
        checks = self.nearly_modular_checks(m, N, bits, terms)
        for check in checks:
            report.add_check(
                "nearly_modular",
                check.passed,
                expected=f"residual <= 2 * {mpf_dec(check.first_omitted, 6)}",
                actual=mpf_dec(check.residual, 6),
                location=check.label,
            )
        report.data["components"] = [check.as_dict() for check in checks]
        logger.info("nearly modular m=%d N=%d passed=%s", m, N, report.passed)
        return report


unity_service = UnityService()
