# app/core/bernoulli.py

import threading
from fractions import Fraction
from math import comb
from typing import List

from app.core.errors import require
from app.core.rationals import RationalLike, normalize

# Tabla memoizada de números de Bernoulli (B_1 = -1/2), protegida por lock
_numbers: List[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """B_n por la recurrencia sum_{k<=n} C(n+1, k) B_k = 0 (n >= 1)"""
    require(n >= 0, f"Bernoulli index must be >= 0, got {n}")
    with _lock:
        for k in range(len(_numbers), n + 1):
            acc = sum(comb(k + 1, j) * _numbers[j] for j in range(k) if _numbers[j])
            _numbers.append(-acc / (k + 1))
        return _numbers[n]


def bernoulli_polynomial(n: int, x: RationalLike) -> RationalLike:
    """B_n(x) = sum_k C(n, k) B_k x^{n-k}, exacto"""
    require(n >= 0, f"Bernoulli index must be >= 0, got {n}")
    bernoulli_number(n)
    x = Fraction(x)
    total = Fraction(0)
    power = Fraction(1)
    # k desde n hacia 0 para que power recorra x^0, x^1, ...
    for k in range(n, -1, -1):
        bk = _numbers[k]
        if bk:
            total += comb(n, k) * bk * power
        power *= x
    return normalize(total)
