# app/services/q_identities.py

import logging
from fractions import Fraction
from math import isqrt
from typing import Dict, List

from app.core.errors import check_ma, require
from app.core.series import BiPoly, TSeries, add_into_trunc, mul_trunc
from app.models.report import IdentityReport
from app.services.characters import characters_service
from app.services.comparisons import first_poly_mismatch, record_series
from app.services.qseries import (
    PolyRing,
    divisor_series,
    eta_product,
    euler_coeffs,
    fold_chain,
    partition_coeffs,
    pochhammer_coeffs,
    qbinomial_coeffs,
    reciprocal_pochhammer_coeffs,
    shifted_pochhammer,
    stretch,
)

logger = logging.getLogger(__name__)


def _mono(e: int, order: int) -> List[int]:
    """q^e truncado (lista [0] si e > order)"""
    return [0] * e + [1] if e <= order else [0]


def _shifted(coeffs, e: int, order: int) -> List:
    """q^e * coeffs truncado a order"""
    out = [0] * (order + 1)
    return add_into_trunc(out, coeffs, e)


def _series(coeffs, order: int) -> TSeries:
    return TSeries(coeffs, order, "q")


class QIdentityService:
    """Verificadores exactos de identidades q truncadas"""

    # -- Productos y lados theta compartidos -------------------------------

    def ag_product(self, m: int, a: int, order: int) -> List:
        """(q^{a+1}, q^{2m-a}, q^{2m+1}; q^{2m+1})_infinity truncado"""
        step = 2 * m + 1
        return eta_product(order, [(a + 1, step), (2 * m - a, step), (step, step)])

    def theta_side(self, m: int, a: int, order: int, weighted: bool = False) -> List:
        """sum_n chi(n) q^{(n^2-c^2)/8(2m+1)}, con peso n/2 si weighted"""
        chi = characters_service.chi_general(m, a)
        c = characters_service.offset(m, a)
        level = characters_service.level(m)
        out = [0] * (order + 1)
        n = c
        while (n * n - c * c) // level <= order:
            value = chi(n)
            if value:
                e = characters_service.exponent(m, a, n)
                out[e] += Fraction(n * value, 2) if weighted else value
            n += 2
        return out

    # -- q-binomiales -------------------------------------------------------

    def verify_qbinomial_recurrences(self, n_max: int) -> IdentityReport:
        require(n_max >= 1, f"n_max must be >= 1, got {n_max}")
        report = IdentityReport(identity="qbinomial_recurrences", parameters={"n_max": n_max})
        for n in range(n_max):
            for c in range(n + 2):
                top = qbinomial_coeffs(n + 1, c)
                first = [0] * c + list(qbinomial_coeffs(n, c))
                first = _add_lists(first, qbinomial_coeffs(n, c - 1))
                second = _add_lists(
                    list(qbinomial_coeffs(n, c)),
                    [0] * (n + 1 - c) + list(qbinomial_coeffs(n, c - 1)),
                )
                for name, rhs in (("qbinomial_recurrence_low", first), ("qbinomial_recurrence_high", second)):
                    d = first_poly_mismatch(top, rhs)
                    if d is not None:
                        report.add_check(name, False, location=f"n={n} c={c} q^{d}")
                        return report
        report.add_check("qbinomial_recurrence_low", True, location=f"n+1 <= {n_max}")
        report.add_check("qbinomial_recurrence_high", True, location=f"n+1 <= {n_max}")
        return report

    def verify_qbinomial_formula(self, q_order: int, z_order: int = None, j_max: int = 4) -> IdentityReport:
        """sum_n (q^j)_n z^n / (q)_n = (q^j z)_infinity / (z)_infinity en (z, q)"""
        z_order = q_order if z_order is None else z_order
        report = IdentityReport(
            identity="qbinomial_formula",
            parameters={"q_order": q_order, "z_order": z_order, "j_max": j_max},
            truncation={"z": z_order, "q": q_order},
        )
        for j in range(j_max + 1):
            lhs_rows = []
            for n in range(z_order + 1):
                if j:
                    shifted = shifted_pochhammer(j, n, q_order)
                else:
                    shifted = _mono(0, q_order) if n == 0 else [0]  # (1)_n = 0 si n > 0
                lhs_rows.append(mul_trunc(shifted, reciprocal_pochhammer_coeffs(n, q_order), q_order))
            lhs = BiPoly(lhs_rows, z_order, q_order)

            rhs = BiPoly.one(z_order, q_order)
            for i in range(q_order + 1):
                if j + i <= q_order:
                    rhs = rhs - rhs.mul_monomial(1, j + i)
                geometric = BiPoly([[0] * (r * i) + [1] for r in range(z_order + 1)], z_order, q_order)
                rhs = rhs * geometric
            loc = lhs.first_mismatch(rhs)
            if loc is not None:
                report.add_check(f"qbinomial_formula_j{j}", False, location=f"z^{loc[0]} q^{loc[1]}")
                return report
            report.add_check(f"qbinomial_formula_j{j}", True, location=f"through z^{z_order} q^{q_order}")
        return report

    # -- Jacobi -------------------------------------------------------------

    def verify_jacobi_triple(self, q_order: int, x_range: int) -> IdentityReport:
        """
        sum_k (-1)^k q^{k^2/2} x^k = (q)_inf (x^{-1} q^{1/2})_inf (x q^{1/2})_inf
        con q = Q^2; las filas son potencias de x (Laurent)
        """
        require(q_order >= 1, f"q_order must be >= 1, got {q_order}")
        require(x_range >= 0, f"x_range must be >= 0, got {x_range}")
        report = IdentityReport(
            identity="jacobi_triple_product",
            parameters={"q_order": q_order, "x_range": x_range},
            truncation={"Q": q_order, "x": f"+-{x_range}", "substitution": "q = Q^2"},
        )
        order = q_order
        rows: Dict[int, List] = {0: [1] + [0] * order}
        i = 0
        while 2 * i + 1 <= order:
            e = 2 * i + 1
            for direction in (1, -1):
                new_rows = {j: list(r) for j, r in rows.items()}
                for j, r in rows.items():
                    target = new_rows.setdefault(j + direction, [0] * (order + 1))
                    add_into_trunc(target, r, e, -1)
                rows = new_rows
            i += 1
        # (Q^2; Q^2)_infinity
        stretched = stretch(euler_coeffs(order // 2), 2, order)
        rhs = {j: mul_trunc(r, stretched, order) for j, r in rows.items()}

        lhs: Dict[int, List] = {}
        k_max = isqrt(order)
        for k in range(-k_max, k_max + 1):
            row = [0] * (order + 1)
            row[k * k] = (-1) ** abs(k)
            lhs[k] = row

        zero = [0] * (order + 1)
        for j in range(-x_range, x_range + 1):
            left, right = lhs.get(j, zero), rhs.get(j, zero)
            for d in range(order + 1):
                if left[d] != right[d]:
                    report.add_check(
                        "jacobi_triple_product",
                        False,
                        expected=right[d],
                        actual=left[d],
                        location=f"x^{j} Q^{d}",
                    )
                    return report
        report.add_check("jacobi_triple_product", True, location=f"|j| <= {x_range}, Q^{order}")
        return report

    # -- Andrews-Gordon -----------------------------------------------------

    def ag_multisum(self, m: int, a: int, order: int) -> List:
        """sum q^{n_1^2+...+n_{m-1}^2 + n_{a+1}+...+n_{m-1}} / ((q)_{n_1-n_2} ... (q)_{n_{m-1}})"""
        bound = isqrt(order)
        levels = m - 1

        def lin(i: int, n: int) -> int:
            return n * n + (n if i >= a + 1 else 0)

        # nivel inferior n_{m-1}
        current = [
            _shifted(reciprocal_pochhammer_coeffs(n, order), lin(levels, n), order)
            for n in range(bound + 1)
        ]
        for i in range(levels - 1, 0, -1):
            nxt = []
            for n in range(bound + 1):
                acc = [0] * (order + 1)
                for n2 in range(n + 1):
                    if any(current[n2]):
                        prod = mul_trunc(current[n2], reciprocal_pochhammer_coeffs(n - n2, order), order)
                        add_into_trunc(acc, prod)
                nxt.append(_shifted(acc, lin(i, n), order))
            current = nxt
        total = [0] * (order + 1)
        for row in current:
            add_into_trunc(total, row)
        return total

    def verify_andrews_gordon(self, m: int, a: int, q_order: int) -> IdentityReport:
        check_ma(m, a, min_m=2)
        require(q_order >= 0, f"q_order must be >= 0, got {q_order}")
        report = IdentityReport(
            identity="andrews_gordon",
            parameters={"m": m, "a": a, "q_order": q_order},
            truncation={"q": q_order, "n_1": f"n_1^2 <= {q_order}"},
        )
        multisum = _series(self.ag_multisum(m, a, q_order), q_order)
        partitions = partition_coeffs(q_order)
        # prod_{n != 0, +-(a+1) mod 2m+1} 1/(1-q^n) = producto triple / (q)_inf
        product = mul_trunc(self.ag_product(m, a, q_order), partitions, q_order)
        theta = mul_trunc(self.theta_side(m, a, q_order), partitions, q_order)
        record_series(report, "andrews_gordon_product", multisum, _series(product, q_order))
        record_series(report, "andrews_gordon_theta", multisum, _series(theta, q_order))
        report.data["leading"] = [str(c) for c in multisum.coeffs[:8]]
        return report

    def variant_ag_multisum(self, m: int, a: int, order: int) -> List:
        """Suma de la variante con el corchete [k_{a+1}+1 over k_a]"""
        top_max = isqrt(order)
        chain = fold_chain(
            length=m - 1,
            top_max=top_max,
            slack_link=a,
            weight=lambda i, k: _mono(k * k + (k if i > a else 0), order),
            bracket=qbinomial_coeffs,
            ring=PolyRing(order),
        )
        total = [0] * (order + 1)
        for k, inner in enumerate(chain):
            e = k * k + (k if m - 1 > a else 0)
            if e > order:
                continue
            term = mul_trunc(inner, reciprocal_pochhammer_coeffs(k, order), order)
            add_into_trunc(total, term, e)
        return total

    def verify_variant_ag(self, m: int, a: int, q_order: int) -> IdentityReport:
        check_ma(m, a, min_m=2)
        require(q_order >= 0, f"q_order must be >= 0, got {q_order}")
        report = IdentityReport(
            identity="variant_andrews_gordon",
            parameters={"m": m, "a": a, "q_order": q_order},
            truncation={"q": q_order, "k_{m-1}": f"k^2 <= {q_order}"},
        )
        lhs = mul_trunc(self.ag_product(m, a, q_order), partition_coeffs(q_order), q_order)
        rhs = self.variant_ag_multisum(m, a, q_order)
        record_series(report, "variant_andrews_gordon", _series(lhs, q_order), _series(rhs, q_order))
        return report

    def verify_H_at_unity(self, m: int, a: int, q_order: int) -> IdentityReport:
        """Forma cerrada de H_m^(a) en x = 1 contra el producto triple"""
        check_ma(m, a)
        report = IdentityReport(
            identity="h_at_unity",
            parameters={"m": m, "a": a, "q_order": q_order},
            truncation={"q": q_order},
        )
        record_series(
            report,
            "h_at_unity",
            _series(self.theta_side(m, a, q_order), q_order),
            _series(self.ag_product(m, a, q_order), q_order),
        )
        return report

    # -- Identidad puente ---------------------------------------------------

    def bridge_blocks(self, m: int, a: int, order: int) -> Dict[str, TSeries]:
        """Los cuatro bloques de la identidad puente y su lado derecho"""
        check_ma(m, a)
        c = characters_service.offset(m, a)
        boundary = 1 if a == m - 1 else 0
        poch_inf = list(euler_coeffs(order))
        harmonic = divisor_series(order)

        product = self.ag_product(m, a, order)
        # c/2 solo en q^0; el resto es -sum_i q^i/(1-q^i)
        block1 = mul_trunc(product, [Fraction(c, 2)] + [-h for h in harmonic[1:]], order)

        # S: cadena k_1..k_{m-1} con pesos duales (f, g) = q^e (1, 2k)
        top_max = isqrt(order)
        if m == 1:
            tops = [([1], [0])]
        else:
            tops = fold_chain(
                length=m - 1,
                top_max=top_max,
                slack_link=a,
                weight=lambda i, k: _dual_mono(k * k + (k if i > a else 0), 2 * k, order),
                bracket=lambda n, k: (list(qbinomial_coeffs(n, k)), [0]),
                ring=DualRing(order),
            )
        s_total = [0] * (order + 1)
        partial_harmonic = [0] * (order + 1)
        for k, (f, g) in enumerate(tops):
            if k > 0:
                # sum_{i<=k} q^i/(1-q^i)
                geo = [0] * (order + 1)
                for d in range(k, order + 1, k):
                    geo[d] = 1
                add_into_trunc(partial_harmonic, geo)
            e = k * k + (k if m - 1 > a else 0)
            if e > order:
                continue
            weight = [3 * k - boundary + partial_harmonic[0]] + partial_harmonic[1:]
            inner = _add_lists(list(g), mul_trunc(f, weight, order))
            term = mul_trunc(inner, reciprocal_pochhammer_coeffs(k, order), order)
            add_into_trunc(s_total, term, e)
        block2 = mul_trunc(poch_inf, s_total, order)
        block3 = [boundary * v for v in poch_inf]

        # R: sum ((q)_{k_m} - (q)_inf) * cadena de X_m^(a)
        chain = fold_chain(
            length=m,
            top_max=order,
            slack_link=a,
            weight=lambda i, k: _mono(k * k + (k if i > a else 0), order),
            bracket=qbinomial_coeffs,
            ring=PolyRing(order),
        )
        r_total = [0] * (order + 1)
        for k, inner in enumerate(chain):
            diff = list(pochhammer_coeffs(k)[: order + 1])
            diff.extend([0] * (order + 1 - len(diff)))
            diff = [u - v for u, v in zip(diff, poch_inf)]
            add_into_trunc(r_total, mul_trunc(inner, diff, order))

        return {
            "product_block": _series(block1, order),
            "weighted_block": _series(block2, order),
            "boundary_block": _series(block3, order),
            "difference_block": _series(r_total, order),
            "theta_side": _series(self.theta_side(m, a, order, weighted=True), order),
        }

    def verify_bridge_identity(self, m: int, a: int, q_order: int) -> IdentityReport:
        check_ma(m, a)
        require(q_order >= 0, f"q_order must be >= 0, got {q_order}")
        report = IdentityReport(
            identity="bridge_identity",
            parameters={"m": m, "a": a, "q_order": q_order},
            truncation={"q": q_order, "k_{m-1}": f"k^2 <= {q_order}", "k_m": f"<= {q_order}"},
        )
        blocks = self.bridge_blocks(m, a, q_order)
        lhs = (
            blocks["product_block"]
            + blocks["weighted_block"]
            + blocks["boundary_block"]
            - blocks["difference_block"]
        )
        record_series(report, "bridge_identity", lhs, blocks["theta_side"])
        return report

    # -- Lema (b, c) --------------------------------------------------------

    def verify_bc_lemma(self, a_max: int, q_order: int) -> IdentityReport:
        """sum_b (-1)^{b+c} q^{(b^2+b+c^2+c)/2} / ((q)_{a-b} (q)_{b-c}) = q^{c^2+c} [a over c]"""
        require(a_max >= 0, f"a_max must be >= 0, got {a_max}")
        report = IdentityReport(
            identity="bc_lemma",
            parameters={"a_max": a_max, "q_order": q_order},
            truncation={"q": q_order},
        )
        order = q_order
        for a in range(a_max + 1):
            for c in range(a + 1):
                lhs = [0] * (order + 1)
                for b in range(c, a + 1):
                    e = (b * b + b + c * c + c) // 2
                    if e > order:
                        continue
                    prod = mul_trunc(
                        reciprocal_pochhammer_coeffs(a - b, order),
                        reciprocal_pochhammer_coeffs(b - c, order),
                        order,
                    )
                    add_into_trunc(lhs, prod, e, (-1) ** (b + c))
                rhs = _shifted(qbinomial_coeffs(a, c), c * c + c, order)
                d = _series(lhs, order).first_mismatch(_series(rhs, order))
                if d is not None:
                    report.add_check("bc_lemma", False, expected=rhs[d], actual=lhs[d], location=f"a={a} c={c} q^{d}")
                    return report
        report.add_check("bc_lemma", True, location=f"0 <= c <= a <= {a_max}, q^{order}")
        return report


class DualRing:
    """Pares (f, g) = f + eps g con eps^2 = 0, sobre series en q truncadas"""

    def __init__(self, order: int):
        self.order = order

    def zero(self):
        return ([0], [0])

    def one(self):
        return ([1], [0])

    def add(self, u, v):
        return (_add_lists(list(u[0]), v[0]), _add_lists(list(u[1]), v[1]))

    def mul(self, u, v):
        f = mul_trunc(u[0], v[0], self.order)
        g = _add_lists(mul_trunc(u[0], v[1], self.order), mul_trunc(u[1], v[0], self.order))
        return (f, g)

    def is_zero(self, u) -> bool:
        return not any(u[0]) and not any(u[1])


def _dual_mono(e: int, scale: int, order: int):
    if e > order:
        return ([0], [0])
    return ([0] * e + [1], [0] * e + [scale])


def _add_lists(u: List, v) -> List:
    if len(u) < len(v):
        u = u + [0] * (len(v) - len(u))
    for d, c in enumerate(v):
        if c:
            u[d] += c
    return u


q_identity_service = QIdentityService()
