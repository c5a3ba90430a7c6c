# app/tests/test_h_functions.py

import pytest

from app.core.errors import ParameterError
from app.core.series import BiPoly
from app.services.h_functions import HForm, h_function_service


@pytest.mark.unit
class TestXPochhammer:
    """(x)_n y (qx)_n como polinomios en (x, q)"""

    def test_x_pochhammer_one(self):
        """(x)_1 = 1 - x"""
        poly = h_function_service.x_pochhammer(1, 3, 3)
        assert poly == BiPoly.one(3, 3) - BiPoly.monomial(1, 0, 3, 3)

    def test_shifted_start(self):
        """(qx)_1 = 1 - q x"""
        poly = h_function_service.x_pochhammer(1, 3, 3, start=1)
        assert poly.coefficient(1, 1) == -1
        assert poly.coefficient(1, 0) == 0

    def test_inverse(self):
        """(qx)_n * 1/(qx)_n = 1"""
        xo, qo = 5, 6
        for n in range(4):
            poly = h_function_service.x_pochhammer(n, xo, qo, start=1)
            assert poly * h_function_service.x_pochhammer_inverse(n, xo, qo) == BiPoly.one(xo, qo)


@pytest.mark.formal
class TestHFunctions:
    """H_m^(a): multisuma, forma cerrada y ecuación en diferencias"""

    def test_closed_form_low_terms(self):
        """H_2^(0) = 1 - q x^2 - q^4 x^5 + q^7 x^7 + ..."""
        h = h_function_service.build_H_bipoly(2, 0, 8, 8, HForm.CLOSED)
        assert h.coefficient(0, 0) == 1
        assert h.coefficient(2, 1) == -1
        assert h.coefficient(5, 4) == -1
        assert h.coefficient(7, 7) == 1
        assert h.coefficient(1, 0) == 0

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_multisum_equals_closed_form(self, m):
        for a in range(m):
            report = h_function_service.verify_H_closed_form(m, a, 6, 8)
            assert report.passed, report.failures

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_difference_equation(self, m):
        for a in range(m):
            report = h_function_service.verify_H_difference_equation(m, a, 6, 8)
            assert report.passed, report.failures
            assert [d.check_name for d in report.details] == [
                "h_difference_equation_multisum",
                "h_difference_equation_closed",
            ]

    def test_form_accepts_string(self):
        closed = h_function_service.build_H_bipoly(1, 0, 4, 4, "closed")
        assert closed == h_function_service.build_H_bipoly(1, 0, 4, 4, HForm.CLOSED)

    def test_negative_truncation(self):
        with pytest.raises(ParameterError):
            h_function_service.build_H_bipoly(1, 0, -1, 4)

    def test_invalid_pair(self):
        with pytest.raises(ParameterError):
            h_function_service.verify_H_closed_form(2, 2, 4, 4)


@pytest.mark.formal
class TestHTildeAndG:
    """H~_m^(a), G y el lema de descomposición"""

    def test_htilde_low_terms(self):
        """H~_1^(0) = 1 - q x^2 + ..."""
        h = h_function_service.build_Htilde_bipoly(1, 0, 4, 4)
        assert h.coefficient(0, 0) == 1
        assert h.coefficient(1, 0) == 0
        assert h.coefficient(2, 1) == -1

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_htilde_difference(self, m):
        for a in range(m):
            report = h_function_service.verify_Htilde_difference(m, a, 6, 8)
            assert report.passed, report.failures

    def test_g_identities(self):
        report = h_function_service.verify_G_identities(6, 8)
        assert report.passed, report.failures
        assert len(report.details) == 4

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_lemma(self, m):
        """Bloque con (qx)_inf más bloque de diferencias reconstruye H"""
        for a in range(m):
            report = h_function_service.verify_H_lemma(m, a, 5, 6)
            assert report.passed, report.failures
