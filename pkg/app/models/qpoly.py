# app/models/qpoly.py

from typing import Iterable, Optional

from app.core.series import TSeries


class QPolynomial(TSeries):
    """
    Serie en q con marca de exactitud: exact=True cuando el objeto es un
    polinomio genuino (q-binomial) y el orden cubre todo su grado.
    """

    __slots__ = ("exact",)

    def __init__(self, coeffs: Iterable, order: Optional[int] = None, exact: bool = False):
        super().__init__(coeffs, order, "q")
        self.exact = exact

    @property
    def degree(self) -> int:
        for d in range(self.order, -1, -1):
            if self.coeffs[d]:
                return d
        return -1

    def at_one(self) -> int:
        """Valor en q = 1 (solo tiene sentido si exact)"""
        return sum(self.coeffs)
