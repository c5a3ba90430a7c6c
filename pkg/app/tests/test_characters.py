# app/tests/test_characters.py

import pytest

from app.core.errors import ParameterError
from app.models.character import PeriodicCharacter
from app.services.characters import characters_service


@pytest.mark.unit
class TestCharacterTables:
    """Tablas de chi_12, chi_20^(a) y chi_{8m+4}^(a)"""

    def test_chi_12_support(self):
        """chi_12: +1 en 1, 11 y -1 en 5, 7"""
        chi = characters_service.chi_12()
        assert chi.modulus == 12
        assert chi.support() == [(1, 1), (5, -1), (7, -1), (11, 1)]

    def test_chi_20_a0_support(self):
        chi = characters_service.chi_20(0)
        assert chi.support() == [(3, 1), (7, -1), (13, -1), (17, 1)]

    def test_chi_20_a1_support(self):
        chi = characters_service.chi_20(1)
        assert chi.support() == [(1, 1), (9, -1), (11, -1), (19, 1)]

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_general_characters_are_even_with_mean_zero(self, m):
        """chi(-n) = chi(n) y suma nula en un periodo"""
        for a in range(m):
            chi = characters_service.chi_general(m, a)
            assert chi.has_mean_zero
            assert len(chi.support()) == 4
            for n in range(chi.modulus):
                assert characters_service.chi_eval(chi, -n) == chi(n)

    def test_chi_eval_negative_argument(self):
        chi = characters_service.chi_12()
        assert characters_service.chi_eval(chi, -1) == 1
        assert characters_service.chi_eval(chi, -5) == -1

    def test_support_up_to(self):
        """25 = 1 mod 12 entra en el soporte"""
        assert characters_service.support_up_to(1, 0, 25) == [1, 5, 7, 11, 13, 17, 19, 23, 25]


@pytest.mark.unit
class TestExponents:
    """Exponentes (n^2 - c^2) / 8(2m+1) en el soporte"""

    def test_exponent_zero_at_offset(self):
        assert characters_service.exponent(2, 0, 3) == 0
        assert characters_service.exponent(2, 1, 1) == 0

    def test_exponents_integral_on_support(self):
        for m in range(1, 5):
            for a in range(m):
                for n in characters_service.support_up_to(m, a, 200):
                    assert characters_service.exponent(m, a, n) >= 0

    def test_exponent_off_support_raises(self):
        with pytest.raises(ArithmeticError):
            characters_service.exponent(1, 0, 2)


@pytest.mark.unit
class TestCharacterValidation:
    """Validación de parámetros"""

    def test_a_out_of_range(self):
        """a debe cumplir 0 <= a < m"""
        with pytest.raises(ParameterError):
            characters_service.chi_general(2, 2)

    def test_m_zero(self):
        with pytest.raises(ParameterError):
            characters_service.chi_general(0, 0)

    def test_table_length_checked(self):
        with pytest.raises(ValueError):
            PeriodicCharacter(modulus=4, values=(1, -1))

    def test_summary_payload(self):
        summary = characters_service.chi_12().summary()
        assert summary["modulus"] == 12
        assert summary["support"][0] == [1, 1]
