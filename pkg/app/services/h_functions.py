# app/services/h_functions.py

"""
Funciones H_m^(a)(x), su variante con tilde y G(x) como polinomios en (x, q)
truncados, con sus formas cerradas, ecuaciones en diferencias y lemas.
"""
import logging
from enum import Enum
from functools import lru_cache
from typing import List

from app.core.errors import check_ma, require
from app.core.series import BiPoly
from app.models.report import IdentityReport
from app.services.characters import characters_service
from app.services.comparisons import record_bipoly
from app.services.qseries import fold_chain, qbinomial_coeffs

logger = logging.getLogger(__name__)


class HForm(str, Enum):
    MULTISUM = "multisum"
    CLOSED = "closed"


class BiPolyRing:
    """Anillo de BiPoly con truncamiento fijo, para fold_chain"""

    def __init__(self, x_order: int, q_order: int):
        self.x_order = x_order
        self.q_order = q_order

    def zero(self) -> BiPoly:
        return BiPoly.zero(self.x_order, self.q_order)

    def one(self) -> BiPoly:
        return BiPoly.one(self.x_order, self.q_order)

    def add(self, u: BiPoly, v: BiPoly) -> BiPoly:
        return u + v

    def mul(self, u: BiPoly, v: BiPoly) -> BiPoly:
        return u * v

    def is_zero(self, u: BiPoly) -> bool:
        return not any(any(row) for row in u.rows)


class HFunctionService:
    """Constructores y verificadores de H, H tilde y G"""

    # -- Piezas -------------------------------------------------------------

    @staticmethod
    def x_pochhammer(n: int, x_order: int, q_order: int, start: int = 0) -> BiPoly:
        """prod_{i=start}^{start+n-1} (1 - x q^i); start=0 da (x)_n, start=1 da (qx)_n"""
        result = BiPoly.one(x_order, q_order)
        for i in range(start, start + n):
            if i > q_order:
                break
            result = result - result.mul_monomial(1, i)
        return result

    @staticmethod
    def x_pochhammer_inf(x_order: int, q_order: int) -> BiPoly:
        """(qx)_infinity: el factor i aporta q-grado mínimo i"""
        return HFunctionService.x_pochhammer(q_order, x_order, q_order, start=1)

    @staticmethod
    def x_pochhammer_inverse(n: int, x_order: int, q_order: int) -> BiPoly:
        """1/(qx)_n = prod_{i=1}^{n} sum_r x^r q^{ri}"""
        result = BiPoly.one(x_order, q_order)
        for i in range(1, n + 1):
            if i > q_order:
                break
            geometric = BiPoly([[0] * (r * i) + [1] for r in range(x_order + 1)], x_order, q_order)
            result = result * geometric
        return result

    def _chain(self, m: int, a: int, length: int, top_max: int, x_order: int, q_order: int, tilde: bool) -> List[BiPoly]:
        """Cadena de pesos x^{2k} q^{k^2 + lin(i) k} con corchetes en q"""

        @lru_cache(maxsize=None)
        def bracket(n: int, c: int) -> BiPoly:
            return BiPoly.from_q_poly(qbinomial_coeffs(n, c), x_order, q_order)

        def weight(i: int, k: int) -> BiPoly:
            if tilde:
                lin = 0 if i > a else -k
            else:
                lin = k if i > a else 0
            return BiPoly.monomial(2 * k, k * k + lin, x_order, q_order)

        return fold_chain(length, top_max, a, weight, bracket, BiPolyRing(x_order, q_order))

    # -- Constructores ------------------------------------------------------

    def build_H_bipoly(self, m: int, a: int, x_order: int, q_order: int, form: HForm = HForm.MULTISUM) -> BiPoly:
        check_ma(m, a)
        require(x_order >= 0 and q_order >= 0, f"Negative truncation ({x_order}, {q_order})")
        form = HForm(form)
        if form == HForm.CLOSED:
            return self._closed_form(m, a, x_order, q_order)
        chain = self._chain(m, a, m, x_order, x_order, q_order, tilde=False)
        total = BiPoly.zero(x_order, q_order)
        for k_top, inner in enumerate(chain):
            # (x)_{k_m+1} x^{k_m}
            top = self.x_pochhammer(k_top + 1, x_order, q_order).mul_monomial(k_top, 0)
            total = total + inner * top
        return total

    def _closed_form(self, m: int, a: int, x_order: int, q_order: int) -> BiPoly:
        """sum_n chi(n) q^{(n^2-c^2)/8(2m+1)} x^{(n-c)/2}"""
        chi = characters_service.chi_general(m, a)
        c = characters_service.offset(m, a)
        rows = [[0] * (q_order + 1) for _ in range(x_order + 1)]
        n = c
        while (n - c) // 2 <= x_order:
            value = chi(n)
            if value:
                e = characters_service.exponent(m, a, n)
                if e <= q_order:
                    rows[(n - c) // 2][e] += value
            n += 2
        return BiPoly(rows, x_order, q_order)

    def build_Htilde_bipoly(self, m: int, a: int, x_order: int, q_order: int) -> BiPoly:
        """x^{-1} (H_m^(a)(x, x, q^{-1/2} x) - 1): pesos q^{k^2-k} (i <= a), q^{k^2} (i > a)"""
        check_ma(m, a)
        wide = x_order + 1
        chain = self._chain(m, a, m, wide, wide, q_order, tilde=True)
        total = BiPoly.zero(wide, q_order)
        for k_top, inner in enumerate(chain):
            # (x)_{k_m} x^{k_m}
            top = self.x_pochhammer(k_top, wide, q_order).mul_monomial(k_top, 0)
            total = total + inner * top
        return (total - 1).divide_by_x()

    def build_G_bipoly(self, x_order: int, q_order: int) -> BiPoly:
        """G(x) = sum_{n>=1} sum_c (x)_n x^{n-1} q^{c^2} x^{2c} [n over c]"""
        require(x_order >= 0 and q_order >= 0, f"Negative truncation ({x_order}, {q_order})")
        total = BiPoly.zero(x_order, q_order)
        for n in range(1, x_order + 2):
            inner = BiPoly.zero(x_order, q_order)
            for c in range(n + 1):
                if 2 * c > x_order or c * c > q_order:
                    break
                inner = inner + BiPoly.from_q_poly(qbinomial_coeffs(n, c), x_order, q_order).mul_monomial(2 * c, c * c)
            top = self.x_pochhammer(n, x_order, q_order).mul_monomial(n - 1, 0)
            total = total + inner * top
        return total

    # -- Ecuaciones en diferencias -----------------------------------------

    @staticmethod
    def difference_rhs(h: BiPoly, head: BiPoly, coeff_q: int, coeff_x: int) -> BiPoly:
        """head - q^{coeff_q} x^{coeff_x} h(qx)"""
        return head - h.substitute_qx().mul_monomial(coeff_x, coeff_q)

    def h_difference_rhs(self, m: int, a: int, h: BiPoly) -> BiPoly:
        """1 - q^{a+1} x^{2a+2} - q^{2m-a} x^{2m+1} H(qx)"""
        head = BiPoly.one(h.x_order, h.q_order) - BiPoly.monomial(2 * a + 2, a + 1, h.x_order, h.q_order)
        return self.difference_rhs(h, head, 2 * m - a, 2 * m + 1)

    def htilde_difference_rhs(self, m: int, a: int, h: BiPoly) -> BiPoly:
        """1 + x + ... + x^{2a} - q^{m-a} x^{2m} - q^{m-a+1} x^{2m+1} H~(qx)"""
        head = BiPoly([[1] for _ in range(2 * a + 1)], h.x_order, h.q_order)
        head = head - BiPoly.monomial(2 * m, m - a, h.x_order, h.q_order)
        return self.difference_rhs(h, head, m - a + 1, 2 * m + 1)

    # -- Verificadores ------------------------------------------------------

    def _report(self, identity: str, m: int, a: int, x_order: int, q_order: int) -> IdentityReport:
        return IdentityReport(
            identity=identity,
            parameters={"m": m, "a": a, "x_order": x_order, "q_order": q_order},
            truncation={"x": x_order, "q": q_order, "k_m": f"<= {x_order}"},
        )

    def verify_H_closed_form(self, m: int, a: int, x_order: int, q_order: int) -> IdentityReport:
        check_ma(m, a)
        report = self._report("h_closed_form", m, a, x_order, q_order)
        multisum = self.build_H_bipoly(m, a, x_order, q_order, HForm.MULTISUM)
        closed = self.build_H_bipoly(m, a, x_order, q_order, HForm.CLOSED)
        record_bipoly(report, "h_closed_form", multisum, closed)
        return report

    def verify_H_difference_equation(self, m: int, a: int, x_order: int, q_order: int) -> IdentityReport:
        check_ma(m, a)
        report = self._report("h_difference_equation", m, a, x_order, q_order)
        for form in (HForm.MULTISUM, HForm.CLOSED):
            h = self.build_H_bipoly(m, a, x_order, q_order, form)
            record_bipoly(report, f"h_difference_equation_{form.value}", h, self.h_difference_rhs(m, a, h))
        return report

    def verify_Htilde_difference(self, m: int, a: int, x_order: int, q_order: int) -> IdentityReport:
        check_ma(m, a)
        report = self._report("htilde_difference_equation", m, a, x_order, q_order)
        h = self.build_Htilde_bipoly(m, a, x_order, q_order)
        record_bipoly(report, "htilde_difference_equation", h, self.htilde_difference_rhs(m, a, h))
        return report

    def verify_G_identities(self, x_order: int, q_order: int) -> IdentityReport:
        """G = H_2^(1) (multisuma y forma cerrada) = H~_2^(0), y su ecuación en diferencias"""
        report = self._report("g_identities", 2, 1, x_order, q_order)
        g = self.build_G_bipoly(x_order, q_order)
        record_bipoly(report, "g_equals_h21_multisum", g, self.build_H_bipoly(2, 1, x_order, q_order))
        record_bipoly(report, "g_closed_form", g, self.build_H_bipoly(2, 1, x_order, q_order, HForm.CLOSED))
        record_bipoly(report, "g_equals_htilde20", g, self.build_Htilde_bipoly(2, 0, x_order, q_order))
        head = BiPoly.one(x_order, q_order) - BiPoly.monomial(4, 2, x_order, q_order)
        record_bipoly(report, "g_difference_equation", g, self.difference_rhs(g, head, 3, 5))
        return report

    def lemma_blocks(self, m: int, a: int, x_order: int, q_order: int):
        """
        Descomposición de H_m^(a) en un bloque con (qx)_infinity y un bloque
        de diferencias ((qx)_{k_m} - (qx)_infinity). Para a = m-1 el corchete
        con holgura desaparece del primer bloque y su exponente de x baja en 1.
        """
        check_ma(m, a)
        xo, qo = x_order, q_order
        poch_inf = self.x_pochhammer_inf(xo, qo)
        boundary = a == m - 1

        # primer bloque: cadena k_1..k_{m-1}, índice superior con x^{k} / (qx)_k
        if m == 1:
            tops = [BiPoly.one(xo, qo)]
        else:
            tops = self._chain(m, a, m - 1, xo, xo, qo, tilde=False)
        first = BiPoly.zero(xo, qo)
        for k, inner in enumerate(tops):
            if boundary:
                if k == 0:
                    first = first + inner
                    continue
                top = BiPoly.monomial(3 * k - 1, k * k, xo, qo)
            else:
                top = BiPoly.monomial(3 * k, k * k + k, xo, qo)
            first = first + inner * top * self.x_pochhammer_inverse(k, xo, qo)
        first = poch_inf * first

        # segundo bloque: (1-x) sum ((qx)_{k_m} - (qx)_inf) x^{k_m} cadena de H
        chain = self._chain(m, a, m, xo, xo, qo, tilde=False)
        second = BiPoly.zero(xo, qo)
        for k, inner in enumerate(chain):
            diff = (self.x_pochhammer(k, xo, qo, start=1) - poch_inf).mul_monomial(k, 0)
            second = second + inner * diff
        second = second - second.mul_monomial(1, 0)
        return first, second

    def verify_H_lemma(self, m: int, a: int, x_order: int, q_order: int) -> IdentityReport:
        check_ma(m, a)
        report = self._report("h_lemma", m, a, x_order, q_order)
        first, second = self.lemma_blocks(m, a, x_order, q_order)
        h = self.build_H_bipoly(m, a, x_order, q_order)
        record_bipoly(report, "h_lemma", first + second, h)
        return report


h_function_service = HFunctionService()
