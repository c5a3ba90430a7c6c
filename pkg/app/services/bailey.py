# app/services/bailey.py

"""
Maquinaria de Bailey: lema de Bailey, su corolario en forma finita,
las dos simetrizaciones, la relación intermedia y la identidad delta.
Las tres primeras se evalúan exactamente en puntos racionales aleatorios;
las dos últimas como series formales truncadas.
"""
import logging
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from app.core.config import settings
from app.core.errors import require
from app.core.rationals import format_rational
from app.core.series import TSeries, add_into_trunc, mul_trunc
from app.models.bailey import BaileyPair
from app.models.report import IdentityReport
from app.services.comparisons import record_series
from app.services.qseries import reciprocal_pochhammer_coeffs, stretch

logger = logging.getLogger(__name__)

MID_RELATE_SCALES = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(5, 2))


def rat_pochhammer(base: Fraction, q: Fraction, n: int) -> Fraction:
    """(base; q)_n en un punto racional"""
    out = Fraction(1)
    for i in range(n):
        out *= 1 - base * q ** i
    return out


def _inv(value: Fraction) -> Fraction:
    if value == 0:
        raise ZeroDivisionError("vanishing denominator")
    return 1 / value


class BaileyService:
    """Comprobaciones exactas de la maquinaria de Bailey"""

    # -- Muestreo -----------------------------------------------------------

    @staticmethod
    def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return Fraction(num, den)

    def random_point(self, rng: random.Random, names) -> Dict[str, Fraction]:
        point = {}
        for name in names:
            value = self.random_rational(rng)
            while value in (0, 1, -1):
                value = self.random_rational(rng)
            point[name] = value
        return point

    # -- Pares de Bailey ----------------------------------------------------

    @staticmethod
    def inverse_kernel(q: Fraction, x: Fraction, n: int, r: int) -> Fraction:
        """1 / ((q)_{n-r} (xq)_{n+r}); cero si n - r < 0"""
        if n - r < 0 or n + r < 0:
            return Fraction(0)
        return _inv(rat_pochhammer(q, q, n - r) * rat_pochhammer(x * q, q, n + r))

    def make_pair(self, alpha: List[Fraction], x: Fraction, q: Fraction) -> BaileyPair:
        n_max = len(alpha) - 1
        beta = [
            sum((alpha[r] * self.inverse_kernel(q, x, n, r) for r in range(n + 1)), Fraction(0))
            for n in range(n_max + 1)
        ]
        return BaileyPair(n_max=n_max, alpha=alpha, beta=beta, x=x, q=q)

    def lemma_transform(self, pair: BaileyPair, rho1: Fraction, rho2: Fraction) -> BaileyPair:
        """Par (alpha', beta') producido por el lema de Bailey"""
        q, x = pair.q, pair.x
        xq = x * q
        ratio = xq / (rho1 * rho2)
        alpha = [
            rat_pochhammer(rho1, q, r) * rat_pochhammer(rho2, q, r)
            * _inv(rat_pochhammer(xq / rho1, q, r) * rat_pochhammer(xq / rho2, q, r))
            * ratio ** r * pair.alpha[r]
            for r in range(pair.n_max + 1)
        ]
        beta = []
        for n in range(pair.n_max + 1):
            outer = _inv(rat_pochhammer(xq / rho1, q, n) * rat_pochhammer(xq / rho2, q, n))
            total = Fraction(0)
            for j in range(n + 1):
                total += (
                    rat_pochhammer(rho1, q, j) * rat_pochhammer(rho2, q, j)
                    * rat_pochhammer(ratio, q, n - j)
                    * _inv(rat_pochhammer(q, q, n - j))
                    * ratio ** j * pair.beta[j]
                )
            beta.append(outer * total)
        return BaileyPair(n_max=pair.n_max, alpha=alpha, beta=beta, x=x, q=q)

    def check_pair(self, pair: BaileyPair) -> Optional[int]:
        """Primer n donde beta_n no coincide con la suma de alpha"""
        expected = self.make_pair(list(pair.alpha), pair.x, pair.q)
        for n, (u, v) in enumerate(zip(pair.beta, expected.beta)):
            if u != v:
                return n
        return None

    # -- Corolario y simetrizaciones ----------------------------------------

    def corollary_sides(self, coeffs: List[Fraction], x: Fraction, q: Fraction, n: int):
        """
        sum_k a_k x^k / ((q)_{n-k} (xq)_{n+k})  y
        sum_j q^{j^2} x^j / (q)_{n-j} sum_k a_k q^{-k^2} / ((q)_{j-k} (xq)_{j+k})
        """
        lhs = sum(
            (coeffs[k] * x ** k * self.inverse_kernel(q, x, n, k) for k in range(n + 1)),
            Fraction(0),
        )
        rhs = Fraction(0)
        for j in range(n + 1):
            inner = sum(
                (coeffs[k] * q ** (-k * k) * self.inverse_kernel(q, x, j, k) for k in range(j + 1)),
                Fraction(0),
            )
            rhs += q ** (j * j) * x ** j * _inv(rat_pochhammer(q, q, n - j)) * inner
        return lhs, rhs

    def symmetric_sides(self, coeffs: Dict[int, Fraction], q: Fraction, n: int, shifted: bool):
        """
        Primera simetrización (núcleo (q)_{n-k}(q)_{n+k}, shifted=False) o
        segunda (núcleo (q)_{n-k}(q)_{n+k-1}, exponentes j^2-j y k^2-k)
        """
        lag = 1 if shifted else 0

        def kernel(n_: int, k: int) -> Fraction:
            if n_ - k < 0 or n_ + k - lag < 0:
                return Fraction(0)
            return _inv(rat_pochhammer(q, q, n_ - k) * rat_pochhammer(q, q, n_ + k - lag))

        def quad(k: int) -> int:
            return k * k - lag * k

        lhs = sum((c * kernel(n, k) for k, c in coeffs.items()), Fraction(0))
        rhs = Fraction(0)
        for j in range(n + 1):
            inner = sum((c * q ** (-quad(k)) * kernel(j, k) for k, c in coeffs.items()), Fraction(0))
            rhs += q ** quad(j) * _inv(rat_pochhammer(q, q, n - j)) * inner
        return lhs, rhs

    # -- Series formales en Q (q = Q^2) -------------------------------------

    @staticmethod
    def _q_squared_reciprocal(n: int, order: int) -> List:
        """1/(Q^2; Q^2)_n truncada en Q; cero para n < 0"""
        return stretch(reciprocal_pochhammer_coeffs(n, order // 2), 2, order)

    def mid_relate_sides(self, scale: Fraction, n: int, order: int):
        """
        sum_k Q^{2c k^2 - k} / ((q)_{n-k}(q)_{n+k-1})  contra
        (1 - Q^{2n}) sum_k Q^{2c k^2 - k} / ((q)_{n-k}(q)_{n+k})
        """
        two_c = 2 * Fraction(scale)
        require(two_c.denominator == 1, f"2c must be an integer, got {two_c}")
        two_c = int(two_c)
        lhs = [0] * (order + 1)
        body = [0] * (order + 1)
        for k in range(-n, n + 1):
            e = two_c * k * k - k
            if e > order:
                continue
            left = mul_trunc(self._q_squared_reciprocal(n - k, order), self._q_squared_reciprocal(n + k - 1, order), order)
            add_into_trunc(lhs, left, e)
            right = mul_trunc(self._q_squared_reciprocal(n - k, order), self._q_squared_reciprocal(n + k, order), order)
            add_into_trunc(body, right, e)
        rhs = list(body)
        if 2 * n <= order:
            add_into_trunc(rhs, body, 2 * n, -1)
        return TSeries(lhs, order, "q"), TSeries(rhs, order, "q")

    def delta_sides(self, n: int, order: int):
        """sum_k (-1)^k q^{(k^2-k)/2} / ((q)_{n-k}(q)_{n+k})  contra  delta_{n,0}"""
        lhs = [0] * (order + 1)
        for k in range(-n, n + 1):
            e = (k * k - k) // 2
            if e > order:
                continue
            term = mul_trunc(
                reciprocal_pochhammer_coeffs(n - k, order),
                reciprocal_pochhammer_coeffs(n + k, order),
                order,
            )
            add_into_trunc(lhs, term, e, -1 if k % 2 else 1)
        rhs = TSeries.one(order, "q") if n == 0 else TSeries.zero(order, "q")
        return TSeries(lhs, order, "q"), rhs

    # -- Verificador --------------------------------------------------------

    def _draw(self, rng: random.Random, build: Callable[[], object]):
        """Repetir el sorteo mientras algún denominador se anule"""
        for _ in range(1000):
            try:
                return build()
            except ZeroDivisionError:
                continue
        raise ZeroDivisionError("could not draw a non-degenerate Bailey instance")

    def verify_bailey_machinery(
        self,
        n_max: int,
        samples: int = None,
        seed: int = None,
        q_order: int = None,
    ) -> IdentityReport:
        require(n_max >= 1, f"n_max must be >= 1, got {n_max}")
        samples = settings.BAILEY_SAMPLES if samples is None else samples
        seed = settings.DEFAULT_SEED if seed is None else seed
        q_order = settings.DEFAULT_Q_ORDER if q_order is None else q_order
        require(samples >= 1, f"samples must be >= 1, got {samples}")
        rng = random.Random(seed)
        report = IdentityReport(
            identity="bailey_machinery",
            parameters={"n_max": n_max, "samples": samples, "seed": seed, "q_order": q_order},
            truncation={"n": n_max, "Q": q_order},
        )
        failures = {
            "bailey_lemma": None,
            "bailey_corollary": None,
            "bailey_symmetric_first": None,
            "bailey_symmetric_second": None,
        }

        for sample in range(samples):
            def lemma_instance():
                point = self.random_point(rng, ("q", "x", "rho1", "rho2"))
                alpha = [self.random_rational(rng) for _ in range(n_max + 1)]
                pair = self.make_pair(alpha, point["x"], point["q"])
                return point, self.lemma_transform(pair, point["rho1"], point["rho2"])

            point, transformed = self._draw(rng, lemma_instance)
            bad = self.check_pair(transformed)
            if bad is not None and failures["bailey_lemma"] is None:
                failures["bailey_lemma"] = f"sample={sample} n={bad} {self._describe(point)}"

            def corollary_instance():
                point = self.random_point(rng, ("q", "x"))
                coeffs = [self.random_rational(rng) for _ in range(n_max + 1)]
                sides = [self.corollary_sides(coeffs, point["x"], point["q"], n) for n in range(n_max + 1)]
                return point, sides

            point, sides = self._draw(rng, corollary_instance)
            for n, (lhs, rhs) in enumerate(sides):
                if lhs != rhs and failures["bailey_corollary"] is None:
                    failures["bailey_corollary"] = f"sample={sample} n={n} {self._describe(point)}"

            for name, shifted, low in (
                ("bailey_symmetric_first", False, -n_max),
                ("bailey_symmetric_second", True, 1 - n_max),
            ):
                def symmetric_instance():
                    point = self.random_point(rng, ("q",))
                    coeffs = {k: self.random_rational(rng) for k in range(low, n_max + 1)}
                    sides = [self.symmetric_sides(coeffs, point["q"], n, shifted) for n in range(n_max + 1)]
                    return point, sides

                point, sides = self._draw(rng, symmetric_instance)
                for n, (lhs, rhs) in enumerate(sides):
                    if lhs != rhs and failures[name] is None:
                        failures[name] = f"sample={sample} n={n} {self._describe(point)}"

        for name, where in failures.items():
            if where is None:
                report.add_check(name, True, location=f"{samples} samples, n <= {n_max}")
            else:
                report.add_check(name, False, location=where)

        for scale in MID_RELATE_SCALES:
            for n in range(n_max + 1):
                lhs, rhs = self.mid_relate_sides(scale, n, q_order)
                if not record_series(report, f"mid_relate c={format_rational(scale)} n={n}", lhs, rhs):
                    break
        for n in range(n_max + 1):
            lhs, rhs = self.delta_sides(n, q_order)
            record_series(report, f"delta_identity n={n}", lhs, rhs)

        logger.info("bailey seed=%d samples=%d passed=%s", seed, samples, report.passed)
        return report

    @staticmethod
    def _describe(point: Dict[str, Fraction]) -> str:
        return " ".join(f"{k}={format_rational(v)}" for k, v in point.items())


bailey_service = BaileyService()
