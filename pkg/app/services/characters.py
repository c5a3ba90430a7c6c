# app/services/characters.py

from functools import lru_cache
from typing import List

from app.core.errors import check_ma
from app.models.character import PeriodicCharacter


class CharacterService:
    """Caracteres periódicos chi_12, chi_20^(a) y chi_{8m+4}^(a)"""

    @staticmethod
    def offset(m: int, a: int) -> int:
        """c = 2m - 2a - 1, primer residuo del soporte"""
        return 2 * m - 2 * a - 1

    @staticmethod
    def level(m: int) -> int:
        """8(2m+1): denominador de los exponentes (n^2 - c^2) / 8(2m+1)"""
        return 8 * (2 * m + 1)

    def chi_general(self, m: int, a: int) -> PeriodicCharacter:
        check_ma(m, a)
        return _chi_general(m, a)

    def chi_12(self) -> PeriodicCharacter:
        return self.chi_general(1, 0)

    def chi_20(self, a: int) -> PeriodicCharacter:
        return self.chi_general(2, a)

    @staticmethod
    def chi_eval(chi: PeriodicCharacter, n: int) -> int:
        """Valor con módulo matemático (n negativo incluido)"""
        return chi.values[n % chi.modulus]

    def exponent(self, m: int, a: int, n: int) -> int:
        """(n^2 - c^2) / 8(2m+1); entero en todo el soporte"""
        c = self.offset(m, a)
        num = n * n - c * c
        q, r = divmod(num, self.level(m))
        if r:
            raise ArithmeticError(f"non-integral exponent for n={n}, m={m}, a={a}")
        return q

    def support_up_to(self, m: int, a: int, bound: int) -> List[int]:
        """Enteros 0 <= n <= bound con chi(n) != 0, en orden creciente"""
        chi = self.chi_general(m, a)
        return [n for n in range(bound + 1) if chi(n)]


@lru_cache(maxsize=None)
def _chi_general(m: int, a: int) -> PeriodicCharacter:
    p = 8 * m + 4
    values = [0] * p
    for r in (2 * m - 2 * a - 1, 6 * m + 2 * a + 5):
        values[r % p] = 1
    for r in (2 * m + 2 * a + 3, 6 * m - 2 * a + 1):
        values[r % p] = -1
    chi = PeriodicCharacter(name=f"chi_{p}^({a})", modulus=p, values=tuple(values))
    # media nula en cada periodo
    assert chi.has_mean_zero, chi
    return chi


characters_service = CharacterService()
