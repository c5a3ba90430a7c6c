# app/tests/test_exact_core.py

from fractions import Fraction

import pytest

from app.core.bernoulli import bernoulli_number, bernoulli_polynomial
from app.core.errors import IntegralityError, ParameterError
from app.core.rationals import format_rational, normalize, parse_rational
from app.core.references import reference_for
from app.core.series import (
    BiPoly,
    TSeries,
    compose_exp_neg_t,
    series_compose_power,
    series_exp,
    series_exp_neg_t,
)
from app.models.report import IdentityReport


@pytest.mark.unit
class TestRationals:
    """Codificación de racionales exactos"""

    def test_format_always_has_denominator(self):
        """Los enteros también se codifican como p/q"""
        assert format_rational(3) == "3/1"
        assert format_rational(Fraction(-6, 4)) == "-3/2"

    def test_parse_inverse_of_format(self):
        """parse_rational deshace format_rational"""
        value = Fraction(-22, 7)
        assert parse_rational(format_rational(value)) == value

    def test_parse_rejects_garbage(self):
        """Un literal inválido es ValueError"""
        with pytest.raises(ValueError):
            parse_rational("one half")

    def test_normalize_reduces_to_int(self):
        assert normalize(Fraction(8, 4)) == 2
        assert isinstance(normalize(Fraction(8, 4)), int)


@pytest.mark.unit
class TestBernoulli:
    """Números y polinomios de Bernoulli"""

    def test_first_numbers(self):
        """B_0..B_4 con el convenio B_1 = -1/2"""
        assert bernoulli_number(0) == 1
        assert bernoulli_number(1) == Fraction(-1, 2)
        assert bernoulli_number(2) == Fraction(1, 6)
        assert bernoulli_number(3) == 0
        assert bernoulli_number(4) == Fraction(-1, 30)

    def test_polynomial_b2(self):
        """B_2(x) = x^2 - x + 1/6"""
        for x in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
            assert bernoulli_polynomial(2, x) == x * x - x + Fraction(1, 6)

    def test_polynomial_reflection(self):
        """B_n(1 - x) = (-1)^n B_n(x)"""
        x = Fraction(2, 7)
        for n in range(1, 9):
            assert bernoulli_polynomial(n, 1 - x) == (-1) ** n * bernoulli_polynomial(n, x)

    def test_negative_index_rejected(self):
        with pytest.raises(ParameterError):
            bernoulli_number(-1)


@pytest.mark.unit
class TestTSeries:
    """Series formales truncadas"""

    def test_exp_coefficients(self):
        """e^t = sum t^k / k!"""
        series = series_exp(1, 4)
        assert series.coeffs == (1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))

    def test_product_truncates_to_min_order(self):
        """El producto queda al orden común más bajo"""
        a = TSeries([1, 1], 5)
        b = TSeries([1, -1], 3)
        product = a * b
        assert product.order == 3
        assert product.coeffs == (1, 0, -1, 0)

    def test_inverse_geometric(self):
        """(1 - t)^{-1} = 1 + t + t^2 + ..."""
        inverse = TSeries([1, -1], 6).inverse()
        assert inverse.coeffs == (1,) * 7

    def test_exp_times_exp_neg(self):
        """e^t e^{-t} = 1"""
        assert series_exp(1, 8) * series_exp_neg_t(8) == TSeries.one(8)

    def test_compose_exp_neg_t(self):
        """1 - q con q = e^{-t} da t - t^2/2 + t^3/6"""
        series = compose_exp_neg_t([1, -1], 3)
        assert series.coeffs == (0, 1, Fraction(-1, 2), Fraction(1, 6))

    def test_compose_power_matches_exp(self):
        """(e^{-t})^3 = e^{-3t}"""
        assert series_compose_power(series_exp_neg_t(6), 3) == series_exp(-3, 6)

    def test_first_mismatch(self):
        a = TSeries([1, 2, 3], 2)
        b = TSeries([1, 2, 4], 2)
        assert a.first_mismatch(b) == 2
        assert a.first_mismatch(a) is None

    def test_variable_mismatch(self):
        """No se mezclan series en t y en q"""
        with pytest.raises(ParameterError):
            TSeries([1], 2, "t") + TSeries([1], 2, "q")

    def test_negative_order_rejected(self):
        with pytest.raises(ParameterError):
            TSeries([1], -1)


@pytest.mark.unit
class TestBiPoly:
    """Polinomios en (x, q) truncados"""

    def test_monomial_coefficient(self):
        poly = BiPoly.monomial(2, 3, 4, 4, coeff=5)
        assert poly.coefficient(2, 3) == 5
        assert poly.coefficient(0, 0) == 0

    def test_monomial_beyond_truncation_is_zero(self):
        assert BiPoly.monomial(5, 0, 4, 4) == BiPoly.zero(4, 4)

    def test_substitute_qx(self):
        """x^j q^d pasa a x^j q^{d+j}"""
        poly = BiPoly.monomial(2, 1, 4, 6)
        assert poly.substitute_qx() == BiPoly.monomial(2, 3, 4, 6)

    def test_product(self):
        """(1 - x)(1 + x) = 1 - x^2"""
        one = BiPoly.one(3, 3)
        x = BiPoly.monomial(1, 0, 3, 3)
        assert (one - x) * (one + x) == one - BiPoly.monomial(2, 0, 3, 3)

    def test_divide_by_x(self):
        poly = BiPoly.monomial(3, 2, 5, 5)
        assert poly.divide_by_x() == BiPoly.monomial(2, 2, 4, 5)

    def test_divide_by_x_requires_zero_row(self):
        """Un término constante dejaría un exponente negativo"""
        with pytest.raises(IntegralityError):
            BiPoly.one(3, 3).divide_by_x()

    def test_at_x_one(self):
        poly = BiPoly.monomial(1, 2, 3, 3) + BiPoly.monomial(2, 2, 3, 3)
        assert poly.at_x_one().coeffs == (0, 0, 2, 0)

    def test_first_mismatch_lexicographic(self):
        """Primero por exponente de x, luego por exponente de q"""
        a = BiPoly.monomial(1, 3, 3, 3) + BiPoly.monomial(2, 0, 3, 3)
        b = BiPoly.zero(3, 3)
        assert a.first_mismatch(b) == (1, 3)

    def test_negative_truncation_rejected(self):
        with pytest.raises(ParameterError):
            BiPoly.zero(-1, 2)


@pytest.mark.unit
class TestCheckReferences:
    """Registro check_name -> ecuación"""

    def test_exact_names(self):
        assert reference_for("bridge_identity") == "identity_X"
        assert reference_for("t_value_routes") == "T_and_L_function"

    def test_suffixed_names_resolve_to_prefix(self):
        """Los sufijos de parámetros no cambian la ecuación"""
        assert reference_for("h_difference_equation_closed") == "difference_general_a"
        assert reference_for("qbinomial_formula_j2") == "binomial_3"
        assert reference_for("delta_identity n=3") == "delta_n0"
        assert reference_for("mid_relate c=1/2 n=0") == "mid_relate"

    def test_unknown_name_rejected(self):
        with pytest.raises(KeyError):
            reference_for("bridge")
        with pytest.raises(KeyError):
            IdentityReport(identity="x").add_check("moonshine", True)

    def test_detail_carries_reference(self):
        report = IdentityReport(identity="bc_lemma")
        detail = report.add_check("bc_lemma", True)
        assert detail.reference == "bc_lemma"
