# app/tests/test_half_derivative.py

from fractions import Fraction

import pytest

from app.core.errors import ParameterError
from app.services.half_derivative import half_derivative_service
from app.services.lvalues import lvalue_service


@pytest.mark.formal
class TestTheorem:
    """t-expansión de X_m^(a)(e^{-t}): multisuma contra valores L"""

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_expansions_agree(self, m):
        for a in range(m):
            result = half_derivative_service.verify_theorem(m, a, 6)
            assert result.passed
            assert result.equal_through == 6
            assert "mismatch" not in result.as_dict()

    def test_constant_term(self):
        """X_m^(a)(1) = a + 1"""
        for a in range(3):
            series = half_derivative_service.x_multisum_tseries(3, a, 2)
            assert series[0] == a + 1

    def test_zagier_series(self):
        """X_1^(0) es la serie sum (q)_n"""
        assert half_derivative_service.x_multisum_tseries(1, 0, 8) == half_derivative_service.zagier_direct_tseries(8)

    def test_zagier_low_coefficients(self):
        """e^{t/24} F(e^{-t}) = sum T_1(n)/n! (t/24)^n"""
        series = half_derivative_service.x_lvalue_tseries(1, 0, 2)
        assert series[0] == 1
        assert series[1] == 1

    def test_cutoff_does_not_change_truncation(self):
        """Los términos con k_m > order no contribuyen"""
        base = half_derivative_service.x_multisum_tseries(2, 1, 5)
        assert half_derivative_service.x_multisum_tseries(2, 1, 5, cutoff=9) == base

    def test_cutoff_below_order(self):
        with pytest.raises(ParameterError):
            half_derivative_service.x_multisum_tseries(2, 1, 5, cutoff=3)

    def test_mismatch_reported(self):
        """Una serie alterada se detecta en el primer orden"""
        result = half_derivative_service.verify_theorem(1, 0, 4)
        tampered = result.rhs + 1
        assert result.lhs.first_mismatch(tampered) == 0


@pytest.mark.numeric
class TestHalfDerivativeNumeric:
    """Suma theta ponderada frente a la serie de T-valores"""

    def test_within_first_omitted_bound(self):
        check = half_derivative_service.half_derivative_numeric_check(1, 0, Fraction(1, 100), 4, 128)
        assert check.passed
        assert check.check_name == "half_derivative_numeric"

    def test_consistent_with_t_values(self):
        """El primer término es e^{c^2 s} T(0)"""
        check = half_derivative_service.half_derivative_numeric_check(2, 1, Fraction(1, 100), 1, 128)
        assert lvalue_service.t_value_genfun(2, 1, 0) == 2
        assert abs(check.rhs - 2) < 0.01

    def test_non_positive_t0(self):
        with pytest.raises(ParameterError):
            half_derivative_service.half_derivative_numeric_check(1, 0, Fraction(-1, 10), 3)
