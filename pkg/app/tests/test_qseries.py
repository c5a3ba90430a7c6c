# app/tests/test_qseries.py

from math import comb

import pytest

from app.core.errors import ParameterError
from app.core.series import mul_trunc
from app.services.qseries import (
    ScalarRing,
    divisor_series,
    eta_product,
    euler_coeffs,
    fold_chain,
    partition_coeffs,
    pochhammer_coeffs,
    qbinomial_coeffs,
    qseries_service,
    reciprocal_pochhammer_coeffs,
    shifted_pochhammer,
    stretch,
)


@pytest.mark.unit
class TestPochhammer:
    """(q)_n y su inversa"""

    def test_small_products(self):
        assert pochhammer_coeffs(0) == (1,)
        assert pochhammer_coeffs(2) == (1, -1, -1, 1)

    def test_reciprocal_is_inverse(self):
        """(q)_n * 1/(q)_n = 1 truncado"""
        order = 12
        for n in range(6):
            product = mul_trunc(list(pochhammer_coeffs(n)), list(reciprocal_pochhammer_coeffs(n, order)), order)
            assert product == [1] + [0] * order

    def test_reciprocal_negative_index_is_zero(self):
        assert reciprocal_pochhammer_coeffs(-1, 4) == (0, 0, 0, 0, 0)

    def test_exact_flag(self):
        """exact solo si el orden cubre el grado completo"""
        assert qseries_service.pochhammer_q(3, 10).exact
        assert not qseries_service.pochhammer_q(3, 2).exact

    def test_euler_pentagonal(self):
        """(q)_inf = 1 - q - q^2 + q^5 + q^7 - ..."""
        assert euler_coeffs(12) == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1)


@pytest.mark.unit
class TestQBinomial:
    """Coeficientes q-binomiales"""

    def test_four_over_two(self):
        assert qbinomial_coeffs(4, 2) == (1, 1, 2, 1, 1)

    def test_value_at_one_is_binomial(self):
        for n in range(8):
            for c in range(n + 1):
                assert qseries_service.qbinomial(n, c).at_one() == comb(n, c)

    def test_out_of_range_is_zero(self):
        assert qbinomial_coeffs(3, 4) == (0,)
        assert qbinomial_coeffs(3, -1) == (0,)

    def test_degree(self):
        assert qseries_service.qbinomial(6, 2).degree == 8


@pytest.mark.unit
class TestProducts:
    """Productos eta, particiones y series auxiliares"""

    def test_eta_product_single_factor_is_euler(self):
        assert eta_product(12, [(1, 1)]) == list(euler_coeffs(12))

    def test_partitions_invert_euler(self):
        """p(n) = 1, 1, 2, 3, 5, 7, 11, ..."""
        assert partition_coeffs(6) == (1, 1, 2, 3, 5, 7, 11)
        assert mul_trunc(list(euler_coeffs(10)), list(partition_coeffs(10)), 10) == [1] + [0] * 10

    def test_shifted_pochhammer(self):
        """(q^2; q)_2 = (1 - q^2)(1 - q^3)"""
        assert shifted_pochhammer(2, 2, 6) == [1, 0, -1, -1, 0, 1, 0]
        assert shifted_pochhammer(3, 0, 2) == [1, 0, 0]

    def test_eta_product_rejects_non_positive(self):
        with pytest.raises(ParameterError):
            eta_product(5, [(0, 1)])

    def test_stretch(self):
        """f(q) -> f(q^2)"""
        assert stretch([1, 2, 3], 2, 5) == [1, 0, 2, 0, 3, 0]

    def test_divisor_series(self):
        assert divisor_series(6) == [0, 1, 2, 2, 3, 2, 4]


@pytest.mark.unit
class TestFoldChain:
    """Plegado de cadenas de índices"""

    def test_length_one_is_one(self):
        ring = ScalarRing()
        assert fold_chain(1, 3, 0, lambda i, k: 1, comb, ring) == [1, 1, 1, 1]

    def test_binomial_chain(self):
        """sum_{k <= n} C(n, k) = 2^n"""
        ring = ScalarRing()
        assert fold_chain(2, 5, 0, lambda i, k: 1, comb, ring) == [2 ** n for n in range(6)]

    def test_slack_link_shifts_bracket(self):
        """Con holgura el corchete superior es n + 1"""
        ring = ScalarRing()
        assert fold_chain(2, 4, 1, lambda i, k: 1, comb, ring) == [2 ** (n + 1) for n in range(5)]

    def test_weights_applied_per_level(self):
        """sum_k C(n, k) 2^k = 3^n"""
        ring = ScalarRing()
        result = fold_chain(2, 4, 0, lambda i, k: 2 ** k if i == 1 else 1, comb, ring)
        assert result == [3 ** n for n in range(5)]
