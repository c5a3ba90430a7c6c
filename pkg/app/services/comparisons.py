# app/services/comparisons.py

"""Registro de comparaciones exactas en un IdentityReport"""
from typing import Optional, Sequence

from app.core.rationals import format_rational
from app.core.series import BiPoly, TSeries
from app.models.report import IdentityReport


def record_series(report: IdentityReport, name: str, lhs: TSeries, rhs: TSeries) -> bool:
    """Añade un check; en fallo anota el primer exponente discrepante"""
    d = lhs.first_mismatch(rhs)
    order = min(lhs.order, rhs.order)
    if d is None:
        report.add_check(name, True, location=f"through {lhs.var}^{order}")
        return True
    report.add_check(
        name,
        False,
        expected=format_rational(rhs[d]),
        actual=format_rational(lhs[d]),
        location=f"{lhs.var}^{d}",
    )
    return False


def record_bipoly(report: IdentityReport, name: str, lhs: BiPoly, rhs: BiPoly) -> bool:
    """Igual que record_series; el primer fallo es el lexicográfico (x, q)"""
    loc = lhs.first_mismatch(rhs)
    if loc is None:
        report.add_check(
            name,
            True,
            location=f"through x^{min(lhs.x_order, rhs.x_order)} q^{min(lhs.q_order, rhs.q_order)}",
        )
        return True
    j, d = loc
    report.add_check(
        name,
        False,
        expected=format_rational(rhs.coefficient(j, d)),
        actual=format_rational(lhs.coefficient(j, d)),
        location=f"x^{j} q^{d}",
    )
    return False


def trim(coeffs: Sequence) -> tuple:
    """Quitar ceros finales (comparar polinomios de distinta longitud)"""
    values = list(coeffs)
    while len(values) > 1 and not values[-1]:
        values.pop()
    return tuple(values)


def first_poly_mismatch(lhs: Sequence, rhs: Sequence) -> Optional[int]:
    a, b = trim(lhs), trim(rhs)
    for d in range(max(len(a), len(b))):
        u = a[d] if d < len(a) else 0
        v = b[d] if d < len(b) else 0
        if u != v:
            return d
    return None
