# app/core/series.py

"""
Anillos truncados exactos: series en una variable (TSeries) y
polinomios en (x, q) truncados conjuntamente (BiPoly).

Almacenamiento denso. Los coeficientes son int mientras sean enteros y
Fraction en cuanto aparece una división.
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple

from app.core.errors import IntegralityError, ParameterError
from app.core.rationals import RationalLike, normalize

VARIABLES = ("t", "q", "x")


# ---------------------------------------------------------------------------
# Primitivas sobre listas
# ---------------------------------------------------------------------------

def mul_trunc(a: Sequence, b: Sequence, order: int) -> List:
    """Producto de listas de coeficientes truncado a grado <= order"""
    out = [0] * (order + 1)
    nb = min(len(b), order + 1)
    for i, ai in enumerate(a):
        if i > order:
            break
        if not ai:
            continue
        top = min(nb, order + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def poly_mul(a: Sequence, b: Sequence) -> List:
    """Producto exacto de polinomios densos (sin truncar)"""
    if not a or not b:
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def add_into_trunc(target: List, source: Sequence, shift: int = 0, scale=1) -> List:
    """target += scale * q^shift * source, sin crecer más allá de len(target)"""
    limit = len(target) - shift
    for j, c in enumerate(source):
        if j >= limit:
            break
        if c:
            target[shift + j] += scale * c
    return target


def inverse_trunc(a: Sequence, order: int) -> List:
    """Inversa de una serie con término constante no nulo"""
    if not a or not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    a0 = Fraction(a[0])
    out = [0] * (order + 1)
    out[0] = normalize(1 / a0)
    for n in range(1, order + 1):
        acc = 0
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc += a[k] * out[n - k]
        out[n] = normalize(-acc / a0) if acc else 0
    return out


# ---------------------------------------------------------------------------
# TSeries
# ---------------------------------------------------------------------------

class TSeries:
    """Serie formal truncada sum_{d<=order} c_d v^d con coeficientes exactos"""

    __slots__ = ("var", "order", "_coeffs", "_hash")

    def __init__(self, coeffs: Iterable, order: Optional[int] = None, var: str = "t"):
        values = list(coeffs)
        if order is None:
            order = max(len(values) - 1, 0)
        if order < 0:
            raise ParameterError(f"Truncation order must be >= 0, got {order}")
        if var not in VARIABLES:
            raise ParameterError(f"Unknown variable tag {var!r}")
        values = values[: order + 1]
        values.extend([0] * (order + 1 - len(values)))
        self.var = var
        self.order = order
        self._coeffs = tuple(normalize(c) for c in values)
        self._hash = None

    # Constructores
    @classmethod
    def zero(cls, order: int, var: str = "t") -> "TSeries":
        return cls([], order, var)

    @classmethod
    def one(cls, order: int, var: str = "t") -> "TSeries":
        return cls([1], order, var)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff: RationalLike = 1, var: str = "t") -> "TSeries":
        if degree > order:
            return cls.zero(order, var)
        values = [0] * (order + 1)
        values[degree] = coeff
        return cls(values, order, var)

    # Acceso
    @property
    def coeffs(self) -> Tuple[RationalLike, ...]:
        return self._coeffs

    def __getitem__(self, degree: int) -> RationalLike:
        if 0 <= degree <= self.order:
            return self._coeffs[degree]
        raise IndexError(f"degree {degree} outside truncation order {self.order}")

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*{self.var}^{d}" for d, c in enumerate(self._coeffs) if c]
        return f"TSeries({' + '.join(terms) or '0'}, order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, TSeries):
            return self.var == other.var and self.order == other.order and self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.var, self.order, self._coeffs))
        return self._hash

    # Aritmética
    def _coerce(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            if other.var != self.var:
                raise ParameterError(f"Variable mismatch: {self.var} vs {other.var}")
            return other
        return TSeries([other], self.order, self.var)

    def __add__(self, other) -> "TSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        return TSeries([x + y for x, y in zip(self._coeffs[: order + 1], other._coeffs)], order, self.var)

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries([-c for c in self._coeffs], self.order, self.var)

    def __sub__(self, other) -> "TSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "TSeries":
        if not isinstance(other, TSeries):
            return TSeries([c * other for c in self._coeffs], self.order, self.var)
        other = self._coerce(other)
        order = min(self.order, other.order)
        return TSeries(mul_trunc(self._coeffs, other._coeffs, order), order, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TSeries":
        return TSeries(inverse_trunc(self._coeffs, self.order), self.order, self.var)

    def __truediv__(self, other) -> "TSeries":
        if isinstance(other, TSeries):
            return self * self._coerce(other).inverse()
        return TSeries([Fraction(c) / other for c in self._coeffs], self.order, self.var)

    def first_mismatch(self, other: "TSeries") -> Optional[int]:
        """Primer grado donde difieren, dentro del orden común"""
        order = min(self.order, other.order)
        for d in range(order + 1):
            if self._coeffs[d] != other._coeffs[d]:
                return d
        return None


def series_exp(scale: RationalLike, order: int, var: str = "t") -> TSeries:
    """e^{scale * v} truncada a orden order"""
    if order < 0:
        raise ParameterError(f"order must be >= 0, got {order}")
    scale = Fraction(scale)
    return TSeries([scale ** k / factorial(k) for k in range(order + 1)], order, var)


def series_exp_neg_t(order: int) -> TSeries:
    """sum_{k<=order} (-t)^k / k!"""
    return series_exp(-1, order)


@lru_cache(maxsize=4096)
def series_compose_power(base: TSeries, k: int) -> TSeries:
    """base^k por cuadrados repetidos; las potencias intermedias quedan en caché"""
    if k < 0:
        raise ParameterError(f"power must be >= 0, got {k}")
    if k == 0:
        return TSeries.one(base.order, base.var)
    if k == 1:
        return base
    half = series_compose_power(base, k // 2)
    square = half * half
    return square * base if k % 2 else square


@lru_cache(maxsize=2048)
def _power_row(j: int, order: int) -> Tuple[int, ...]:
    return tuple(j ** k for k in range(order + 1))


def compose_exp_neg_t(poly: Sequence, order: int) -> TSeries:
    """
    Sustituir q = e^{-t} en un polinomio exacto en q, módulo t^{order+1}.
    Coeficiente k = (-1)^k / k! * sum_j c_j j^k (momentos de los exponentes)
    """
    moments = [0] * (order + 1)
    for j, c in enumerate(poly):
        if not c:
            continue
        row = _power_row(j, order)
        for k in range(order + 1):
            moments[k] += c * row[k]
    return TSeries(
        [Fraction((-1) ** k * moments[k], factorial(k)) for k in range(order + 1)],
        order,
        "t",
    )


# ---------------------------------------------------------------------------
# BiPoly
# ---------------------------------------------------------------------------

class BiPoly:
    """
    Polinomio en (x, q) truncado a x-grado <= x_order y q-grado <= q_order.
    Filas por exponente de x (row-major); cada fila es densa en q.
    """

    __slots__ = ("x_order", "q_order", "_rows")

    def __init__(self, rows: Iterable[Sequence], x_order: int, q_order: int):
        if x_order < 0 or q_order < 0:
            raise ParameterError(f"Negative truncation ({x_order}, {q_order})")
        self.x_order = x_order
        self.q_order = q_order
        built = []
        for j, row in enumerate(rows):
            if j > x_order:
                break
            values = list(row)[: q_order + 1]
            values.extend([0] * (q_order + 1 - len(values)))
            built.append(tuple(normalize(c) for c in values))
        empty = tuple([0] * (q_order + 1))
        built.extend([empty] * (x_order + 1 - len(built)))
        self._rows = tuple(built)

    @classmethod
    def zero(cls, x_order: int, q_order: int) -> "BiPoly":
        return cls([], x_order, q_order)

    @classmethod
    def one(cls, x_order: int, q_order: int) -> "BiPoly":
        return cls([[1]], x_order, q_order)

    @classmethod
    def monomial(cls, j: int, d: int, x_order: int, q_order: int, coeff: RationalLike = 1) -> "BiPoly":
        if j > x_order or d > q_order or j < 0 or d < 0:
            return cls.zero(x_order, q_order)
        rows = [[] for _ in range(j)] + [[0] * d + [coeff]]
        return cls(rows, x_order, q_order)

    @classmethod
    def from_q_poly(cls, coeffs: Sequence, x_order: int, q_order: int) -> "BiPoly":
        return cls([coeffs], x_order, q_order)

    @property
    def rows(self) -> Tuple[Tuple[RationalLike, ...], ...]:
        return self._rows

    def coefficient(self, j: int, d: int) -> RationalLike:
        if 0 <= j <= self.x_order and 0 <= d <= self.q_order:
            return self._rows[j][d]
        return 0

    def __repr__(self) -> str:
        terms = []
        for j, row in enumerate(self._rows):
            terms.extend(f"{c}*x^{j}*q^{d}" for d, c in enumerate(row) if c)
        return f"BiPoly({' + '.join(terms[:12]) or '0'}{' + ...' if len(terms) > 12 else ''})"

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return (
                self.x_order == other.x_order
                and self.q_order == other.q_order
                and self._rows == other._rows
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x_order, self.q_order, self._rows))

    def _orders(self, other: "BiPoly") -> Tuple[int, int]:
        return min(self.x_order, other.x_order), min(self.q_order, other.q_order)

    def __add__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly([[other]], self.x_order, self.q_order)
        xo, qo = self._orders(other)
        rows = [
            [u + v for u, v in zip(self._rows[j][: qo + 1], other._rows[j])]
            for j in range(xo + 1)
        ]
        return BiPoly(rows, xo, qo)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly([[-c for c in row] for row in self._rows], self.x_order, self.q_order)

    def __sub__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            other = BiPoly([[other]], self.x_order, self.q_order)
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return BiPoly([[c * other for c in row] for row in self._rows], self.x_order, self.q_order)
        xo, qo = self._orders(other)
        out = [[0] * (qo + 1) for _ in range(xo + 1)]
        for j1 in range(xo + 1):
            r1 = self._rows[j1]
            if not any(r1):
                continue
            for j2 in range(xo + 1 - j1):
                r2 = other._rows[j2]
                if not any(r2):
                    continue
                prod = mul_trunc(r1, r2, qo)
                acc = out[j1 + j2]
                for d, c in enumerate(prod):
                    if c:
                        acc[d] += c
        return BiPoly(out, xo, qo)

    __rmul__ = __mul__

    def mul_monomial(self, j: int, d: int, coeff: RationalLike = 1) -> "BiPoly":
        """Multiplicar por coeff * x^j q^d (j, d >= 0)"""
        rows = [[] for _ in range(j)]
        for row in self._rows:
            rows.append([0] * d + [c * coeff for c in row])
        return BiPoly(rows, self.x_order, self.q_order)

    def substitute_qx(self) -> "BiPoly":
        """f(x) -> f(q x): el término x^j q^d pasa a x^j q^{d+j}"""
        rows = [[0] * j + list(row) for j, row in enumerate(self._rows)]
        return BiPoly(rows, self.x_order, self.q_order)

    def divide_by_x(self) -> "BiPoly":
        """x^{-1} f(x); la fila x^0 debe ser nula"""
        if any(self._rows[0]):
            raise IntegralityError("x^-1 f(x) would leave a negative x-exponent")
        return BiPoly(self._rows[1:], max(self.x_order - 1, 0), self.q_order)

    def at_x_one(self) -> TSeries:
        """Especializar x = 1 sumando todas las filas (serie en q)"""
        total = [0] * (self.q_order + 1)
        for row in self._rows:
            for d, c in enumerate(row):
                if c:
                    total[d] += c
        return TSeries(total, self.q_order, "q")

    def first_mismatch(self, other: "BiPoly") -> Optional[Tuple[int, int]]:
        """Primer (x-exp, q-exp) en orden lexicográfico donde difieren"""
        xo, qo = self._orders(other)
        for j in range(xo + 1):
            r1, r2 = self._rows[j], other._rows[j]
            for d in range(qo + 1):
                if r1[d] != r2[d]:
                    return j, d
        return None
