# app/services/lvalues.py

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Tuple, Union

from app.core.bernoulli import bernoulli_polynomial
from app.core.config import settings
from app.core.errors import ParameterError, check_ma, require
from app.core.precision import make_context, to_mp
from app.core.series import TSeries
from app.models.character import PeriodicCharacter
from app.models.results import NumericCheck, TSeriesValue
from app.services.characters import characters_service

logger = logging.getLogger(__name__)

Terms = Union[int, str]


class LValueService:
    """T-series T_m^(a)(n) y valores L(-2n-1, chi) por dos rutas independientes"""

    # -- Rutas exactas ------------------------------------------------------

    def t_value_bernoulli(self, m: int, a: int, n: int) -> Fraction:
        """(-1)^n 2^{4n} (2m+1)^{2n+1} / (n+1) sum_r chi(r) B_{2n+2}(r/(8m+4))"""
        check_ma(m, a)
        require(n >= 0, f"n must be >= 0, got {n}")
        return _t_bernoulli(m, a, n)

    def t_value_genfun(self, m: int, a: int, n: int) -> Fraction:
        """(-1)^n (2n+1)!/2 [x^{2n+1}] sh(2(a+1)x) / ch((2m+1)x)"""
        check_ma(m, a)
        require(n >= 0, f"n must be >= 0, got {n}")
        coeffs = _genfun_coefficients(m, a, 2 * n + 1)
        return Fraction((-1) ** n * factorial(2 * n + 1), 2) * coeffs[2 * n + 1]

    def t_value(self, m: int, a: int, n: int, route: str = "bernoulli") -> TSeriesValue:
        if route == "bernoulli":
            value = self.t_value_bernoulli(m, a, n)
        elif route == "genfun":
            value = self.t_value_genfun(m, a, n)
        else:
            raise ParameterError(f"Unknown route {route!r}")
        return TSeriesValue(m=m, a=a, n=n, value=Fraction(value), route=route)

    def t_values(self, m: int, a: int, n_max: int) -> Tuple[Fraction, ...]:
        """T_m^(a)(0..n_max) desde una sola división de series"""
        check_ma(m, a)
        coeffs = _genfun_coefficients(m, a, 2 * n_max + 1)
        return tuple(
            Fraction((-1) ** n * factorial(2 * n + 1), 2) * coeffs[2 * n + 1]
            for n in range(n_max + 1)
        )

    def t_values_table(self, m: int, n_max: int) -> List[Tuple[Fraction, ...]]:
        """Vector T_m(n) ordenado (a = m-1, ..., 0)"""
        return [self.t_values(m, a, n_max) for a in range(m - 1, -1, -1)]

    def l_value_negative(self, chi: PeriodicCharacter, n: int) -> Fraction:
        """L(-2n-1, chi) = -p^{2n+1}/(2n+2) sum_{r=1}^{p} chi(r) B_{2n+2}(r/p)"""
        require(n >= 0, f"n must be >= 0, got {n}")
        if not chi.has_mean_zero:
            raise ParameterError(
                f"{chi.name or 'character'} has non-zero mean {chi.period_sum}; "
                "L-values at negative integers need mean zero"
            )
        return _l_value(chi.modulus, chi.values, n)

    # -- Comprobación numérica de Mellin -----------------------------------

    def mellin_asymptotic_check(
        self,
        chi: PeriodicCharacter,
        t0: Fraction,
        terms: Terms,
        precision_bits: int = None,
    ) -> NumericCheck:
        """
        sum_{n>=0} n chi(n) e^{-n^2 t0}  contra  sum_k L(-2k-1, chi) (-t0)^k / k!
        """
        t0 = Fraction(t0)
        require(t0 > 0, f"t0 must be > 0, got {t0}")
        bits = precision_bits or settings.DEFAULT_PRECISION_BITS
        ctx = make_context(bits)
        t = to_mp(ctx, t0)

        lhs = theta_moment_sum(ctx, chi, lambda n: -(n * n) * t, bits, weight=lambda n: n)

        def term(k: int):
            return to_mp(ctx, self.l_value_negative(chi, k)) * (-t) ** k / ctx.factorial(k)

        rhs, omitted, used = truncated_sum(ctx, term, terms)
        logger.debug("mellin %s t0=%s terms=%s", chi.name, t0, used)
        return NumericCheck(
            check_name="mellin_asymptotics",
            label=f"{chi.name} t0={t0}",
            lhs=lhs,
            rhs=rhs,
            residual=abs(lhs - rhs),
            first_omitted=abs(omitted),
            terms_used=used,
            precision_bits=bits,
        )


def theta_moment_sum(ctx, chi: PeriodicCharacter, log_gauss, precision_bits: int, weight=None, min_n: int = 0):
    """
    sum_{n>=0} w(n) chi(n) exp(log_gauss(n)), hasta que el factor gaussiano
    cae bajo 2^{-precision_bits} (independiente del valor de chi).
    """
    cutoff = -ctx.ln2 * (precision_bits + 16)
    total = ctx.mpf(0)
    n = 0
    while True:
        exponent = log_gauss(n)
        if n > min_n and ctx.re(exponent) < cutoff:
            break
        value = chi(n)
        if value:
            w = weight(n) if weight else 1
            total += value * w * ctx.exp(exponent)
        n += 1
    return total


def truncated_sum(ctx, term, terms: Terms, hard_limit: int = 2000):
    """
    Suma sum_{k<terms} term(k). Con terms="optimal" corta justo antes del
    término de menor módulo. Devuelve (suma, primer término omitido, usados).
    """
    if terms == "optimal":
        values = [term(0)]
        best = 0
        k = 1
        # avanzar hasta tres términos seguidos sin mejorar el mínimo
        while k < hard_limit:
            values.append(term(k))
            if abs(values[k]) < abs(values[best]):
                best = k
            elif k > best + 2:
                break
            k += 1
        used = best
        return ctx.fsum(values[:used]), values[used], used
    if not isinstance(terms, int) or terms < 1:
        raise ParameterError(f"terms must be >= 1 or 'optimal', got {terms!r}")
    values = [term(k) for k in range(terms + 1)]
    return ctx.fsum(values[:terms]), values[terms], terms


@lru_cache(maxsize=None)
def _t_bernoulli(m: int, a: int, n: int) -> Fraction:
    chi = characters_service.chi_general(m, a)
    p = chi.modulus
    total = Fraction(0)
    for r, v in chi.support():
        total += v * Fraction(bernoulli_polynomial(2 * n + 2, Fraction(r, p)))
    # r = p aporta chi(0) = 0
    return Fraction((-1) ** n * 2 ** (4 * n) * (2 * m + 1) ** (2 * n + 1), n + 1) * total


@lru_cache(maxsize=None)
def _l_value(p: int, values: Tuple[int, ...], n: int) -> Fraction:
    total = Fraction(0)
    for r in range(1, p + 1):
        v = values[r % p]
        if v:
            total += v * Fraction(bernoulli_polynomial(2 * n + 2, Fraction(r, p)))
    return -Fraction(p ** (2 * n + 1), 2 * n + 2) * total


_genfun_cache = {}


def _genfun_coefficients(m: int, a: int, order: int) -> Tuple:
    """Taylor exacto de sh(2(a+1)x) / ch((2m+1)x) hasta x^order"""
    cached = _genfun_cache.get((m, a))
    if cached is not None and cached.order >= order:
        return cached.coeffs
    # margen geométrico para reutilizar en llamadas posteriores
    previous = cached.order if cached is not None else 0
    order = max(order, 2 * previous, 2 * settings.DEFAULT_ORDER + 1)
    u, w = 2 * (a + 1), 2 * m + 1
    sh = TSeries([Fraction(u ** k, factorial(k)) if k % 2 else 0 for k in range(order + 1)], order, "x")
    ch = TSeries([Fraction(w ** k, factorial(k)) if k % 2 == 0 else 0 for k in range(order + 1)], order, "x")
    result = sh / ch
    _genfun_cache[(m, a)] = result
    return result.coeffs


lvalue_service = LValueService()
