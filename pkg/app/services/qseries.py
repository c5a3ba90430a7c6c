# app/services/qseries.py

"""Primitivas q sobre q_kangaroo y el plegado de cadenas de índices"""
import threading
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

from q_kangaroo import QSession, aqprod, etaq, partition_gf, qbin

from app.core.errors import require
from app.core.rationals import normalize
from app.core.series import mul_trunc, poly_mul
from app.models.qpoly import QPolynomial

_local = threading.local()


def session() -> QSession:
    """Una QSession por hilo: las suites corren en un pool"""
    current = getattr(_local, "session", None)
    if current is None:
        current = _local.session = QSession()
    return current


def dense(series, order: int) -> List:
    """QSeries -> lista densa de grado <= order con coeficientes exactos"""
    out = [0] * (order + 1)
    for power, c in series.to_dict().items():
        if 0 <= power <= order:
            out[power] = normalize(c)
    return out


class QSeriesService:
    """Servicio de primitivas sobre series en q"""

    def pochhammer_q(self, n: int, order: int) -> QPolynomial:
        """(q)_n = prod_{i=1}^{n} (1 - q^i) truncado a grado <= order"""
        require(n >= 0, f"n must be >= 0, got {n}")
        require(order >= 0, f"order must be >= 0, got {order}")
        full = pochhammer_coeffs(n)
        return QPolynomial(full[: order + 1], order, exact=order >= len(full) - 1)

    def qbinomial(self, n: int, c: int) -> QPolynomial:
        """[n over c]; polinomio nulo fuera de 0 <= c <= n"""
        coeffs = qbinomial_coeffs(n, c)
        return QPolynomial(coeffs, len(coeffs) - 1, exact=True)


# ---------------------------------------------------------------------------
# Tablas en caché (tuplas inmutables, compartibles entre hilos)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def pochhammer_coeffs(n: int) -> Tuple[int, ...]:
    """Polinomio exacto (q)_n, de grado n(n+1)/2"""
    if n <= 0:
        return (1,)
    degree = n * (n + 1) // 2
    return tuple(dense(aqprod(session(), 1, 1, 1, n, degree + 1), degree))


@lru_cache(maxsize=None)
def qbinomial_coeffs(n: int, c: int) -> Tuple[int, ...]:
    """[n over c], de grado c(n-c); (0,) fuera de rango"""
    if c < 0 or c > n or n < 0:
        return (0,)
    degree = c * (n - c)
    return tuple(dense(qbin(session(), n, c, degree + 1), degree))


@lru_cache(maxsize=None)
def reciprocal_pochhammer_coeffs(n: int, order: int) -> Tuple:
    """1/(q)_n truncada; 1/(q)_n = 0 para n < 0"""
    if n < 0:
        return tuple([0] * (order + 1))
    if n == 0:
        return tuple([1] + [0] * order)
    return tuple(dense(aqprod(session(), 1, 1, 1, n, order + 1).invert(), order))


@lru_cache(maxsize=None)
def euler_coeffs(order: int) -> Tuple[int, ...]:
    """(q)_infinity truncado"""
    return tuple(dense(etaq(session(), 1, 1, order + 1), order))


@lru_cache(maxsize=None)
def partition_coeffs(order: int) -> Tuple[int, ...]:
    """1/(q)_infinity: número de particiones"""
    return tuple(dense(partition_gf(session(), order + 1), order))


def shifted_pochhammer(start: int, n: int, order: int) -> List:
    """(q^start; q)_n truncado; start >= 1"""
    require(start >= 1, f"start must be >= 1, got {start}")
    if n <= 0:
        return [1] + [0] * order
    return dense(aqprod(session(), 1, 1, start, n, order + 1), order)


def eta_product(order: int, factors: Sequence[Tuple[int, int]]) -> List:
    """prod (q^b; q^t)_infinity sobre los pares (b, t), truncado"""
    out = [1] + [0] * order
    for b, t in factors:
        require(b >= 1 and t >= 1, f"eta factor needs b, t >= 1, got ({b}, {t})")
        out = mul_trunc(out, dense(etaq(session(), b, t, order + 1), order), order)
    return out


def stretch(coeffs: Sequence, k: int, order: int) -> List:
    """f(q) -> f(q^k) truncado a grado <= order"""
    out = [0] * (order + 1)
    for d, c in enumerate(coeffs):
        if k * d > order:
            break
        out[k * d] = c
    return out


def divisor_series(order: int) -> List[int]:
    """sum_{i>=1} q^i / (1 - q^i) = sum_n d(n) q^n"""
    out = [0] * (order + 1)
    for i in range(1, order + 1):
        for n in range(i, order + 1, i):
            out[n] += 1
    return out


# ---------------------------------------------------------------------------
# Plegado de cadenas
# ---------------------------------------------------------------------------

class PolyRing:
    """Anillo de polinomios en q como listas, opcionalmente truncados"""

    def __init__(self, order: Optional[int] = None):
        self.order = order

    def zero(self):
        return [0]

    def one(self):
        return [1]

    def add(self, u, v):
        if len(u) < len(v):
            u, v = v, u
        out = list(u)
        for d, c in enumerate(v):
            if c:
                out[d] += c
        return out

    def mul(self, u, v):
        if self.order is None:
            return poly_mul(u, v)
        return mul_trunc(u, v, self.order)

    def is_zero(self, u) -> bool:
        return not any(u)


class ScalarRing:
    """Anillo de escalares (Fraction, mpc, ...)"""

    def __init__(self, zero=0, one=1):
        self._zero = zero
        self._one = one

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def add(self, u, v):
        return u + v

    def mul(self, u, v):
        return u * v

    def is_zero(self, u) -> bool:
        return u == 0


def fold_chain(
    length: int,
    top_max: int,
    slack_link: int,
    weight: Callable[[int, int], object],
    bracket: Callable[[int, int], object],
    ring,
) -> List:
    """
    Suma sobre k_1, ..., k_{length-1} de prod_i w_i(k_i) prod_i [k_{i+1}+s_i over k_i]
    para cada valor del índice superior k_length en 0..top_max.

    El enlace i une k_i con k_{i+1}; s_i = 1 si i == slack_link y 0 si no,
    así que k_i <= k_{i+1} + s_i. El peso del índice superior no se incluye.
    Programación dinámica: un vector sobre k_i por cada nivel de la cadena.
    """
    if length <= 1:
        return [ring.one() for _ in range(top_max + 1)]
    slack = [0] * (length + 1)
    if 1 <= slack_link <= length - 1:
        slack[slack_link] = 1
    # cota de k_i: top_max más las holguras de los enlaces por encima
    bound = [0] * (length + 1)
    bound[length] = top_max
    for i in range(length - 1, 0, -1):
        bound[i] = bound[i + 1] + slack[i]

    level = [weight(1, k) for k in range(bound[1] + 1)]
    for i in range(1, length):
        s = slack[i]
        nxt = []
        for k_up in range(bound[i + 1] + 1):
            acc = ring.zero()
            for k in range(min(k_up + s, bound[i]) + 1):
                v = level[k]
                if ring.is_zero(v):
                    continue
                acc = ring.add(acc, ring.mul(v, bracket(k_up + s, k)))
            if i + 1 < length:
                w = weight(i + 1, k_up)
                acc = ring.mul(acc, w) if not ring.is_zero(acc) else acc
            nxt.append(acc)
        level = nxt
    return level


qseries_service = QSeriesService()
