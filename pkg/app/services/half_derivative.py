# app/services/half_derivative.py

import logging
from fractions import Fraction
from math import factorial
from typing import List, Optional

from app.core.config import settings
from app.core.errors import check_ma, require
from app.core.precision import make_context, to_mp
from app.core.series import (
    TSeries,
    compose_exp_neg_t,
    poly_mul,
    series_compose_power,
    series_exp,
    series_exp_neg_t,
)
from app.models.results import NumericCheck, XSeriesResult
from app.services.characters import characters_service
from app.services.lvalues import Terms, lvalue_service, theta_moment_sum, truncated_sum
from app.services.qseries import PolyRing, fold_chain, pochhammer_coeffs, qbinomial_coeffs

logger = logging.getLogger(__name__)


def _monomial(e: int) -> List[int]:
    return [0] * e + [1]


class HalfDerivativeService:
    """t-expansión de X_m^(a)(e^{-t}) desde la multisuma y desde los valores L"""

    def inner_polynomials(self, m: int, a: int, top_max: int) -> List[List[int]]:
        """
        Para cada k_m <= top_max, el polinomio exacto en q
        sum_{k_1..k_{m-1}} q^{sum k_i^2 + sum_{i>a} k_i} prod [k_{i+1} (+1) over k_i]
        """
        check_ma(m, a)
        return fold_chain(
            length=m,
            top_max=top_max,
            slack_link=a,
            weight=lambda i, k: _monomial(k * k + (k if i > a else 0)),
            bracket=qbinomial_coeffs,
            ring=PolyRing(),
        )

    def x_multisum_tseries(self, m: int, a: int, order: int, cutoff: Optional[int] = None) -> TSeries:
        """
        X_m^(a)(e^{-t}) mod t^{order+1}. (e^{-t})_{k_m} tiene t-orden k_m,
        así que basta k_m <= order; cutoff permite comprobarlo con más términos.
        """
        check_ma(m, a)
        require(order >= 0, f"order must be >= 0, got {order}")
        cutoff = order if cutoff is None else cutoff
        require(cutoff >= order, f"cutoff {cutoff} below order {order}")
        total = TSeries.zero(order)
        for k_top, inner in enumerate(self.inner_polynomials(m, a, cutoff)):
            poly = poly_mul(inner, pochhammer_coeffs(k_top))
            total = total + compose_exp_neg_t(poly, order)
        return total

    def x_lvalue_tseries(self, m: int, a: int, order: int) -> TSeries:
        """e^{c^2 t / 8(2m+1)} sum_n T(n)/n! (t / 8(2m+1))^n"""
        check_ma(m, a)
        require(order >= 0, f"order must be >= 0, got {order}")
        c = characters_service.offset(m, a)
        level = characters_service.level(m)
        t_values = lvalue_service.t_values(m, a, order)
        body = TSeries(
            [t_values[n] / (factorial(n) * level ** n) for n in range(order + 1)],
            order,
            "t",
        )
        return series_exp(Fraction(c * c, level), order) * body

    def zagier_direct_tseries(self, order: int) -> TSeries:
        """sum_{n<=order} (e^{-t})_n con potencias de e^{-t} en caché"""
        require(order >= 0, f"order must be >= 0, got {order}")
        base = series_exp_neg_t(order)
        product = TSeries.one(order)
        total = TSeries.one(order)
        for i in range(1, order + 1):
            product = product * (1 - series_compose_power(base, i))
            total = total + product
        return total

    def verify_theorem(self, m: int, a: int, order: int) -> XSeriesResult:
        check_ma(m, a)
        logger.info("theorem m=%d a=%d order=%d", m, a, order)
        lhs = self.x_multisum_tseries(m, a, order)
        rhs = self.x_lvalue_tseries(m, a, order)
        mismatch = lhs.first_mismatch(rhs)
        return XSeriesResult(
            m=m,
            a=a,
            order=order,
            lhs=lhs,
            rhs=rhs,
            equal_through=order if mismatch is None else mismatch - 1,
            mismatch_order=mismatch,
        )

    def half_derivative_numeric_check(
        self,
        m: int,
        a: int,
        t0: Fraction,
        terms: Terms,
        precision_bits: int = None,
    ) -> NumericCheck:
        """
        -1/2 sum_n n chi(n) e^{-(n^2 - c^2) t0 / 8(2m+1)}  contra la
        t-expansión de L-valores evaluada en t0
        """
        check_ma(m, a)
        t0 = Fraction(t0)
        require(t0 > 0, f"t0 must be > 0, got {t0}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = make_context(bits)
        chi = characters_service.chi_general(m, a)
        c = characters_service.offset(m, a)
        s = to_mp(ctx, t0 / characters_service.level(m))

        lhs = -theta_moment_sum(
            ctx, chi, lambda n: -(n * n - c * c) * s, bits, weight=lambda n: n, min_n=c
        ) / 2
        prefactor = ctx.exp(c * c * s)

        def term(k: int):
            t_value = to_mp(ctx, lvalue_service.t_value_genfun(m, a, k))
            return prefactor * t_value * s ** k / ctx.factorial(k)

        rhs, omitted, used = truncated_sum(ctx, term, terms)
        return NumericCheck(
            check_name="half_derivative_numeric",
            label=f"m={m} a={a} t0={t0}",
            lhs=lhs,
            rhs=rhs,
            residual=abs(lhs - rhs),
            first_omitted=abs(omitted),
            terms_used=used,
            precision_bits=bits,
        )


half_derivative_service = HalfDerivativeService()
