# app/tests/test_bailey.py

import random
from fractions import Fraction

import pytest

from app.core.errors import ParameterError
from app.models.bailey import BaileyPair
from app.services.bailey import bailey_service, rat_pochhammer


@pytest.mark.unit
class TestBaileyPairs:
    """Pares de Bailey en puntos racionales"""

    def test_rat_pochhammer(self):
        half = Fraction(1, 2)
        assert rat_pochhammer(half, half, 2) == Fraction(3, 8)
        assert rat_pochhammer(half, half, 0) == 1

    def test_beta_zero_equals_alpha_zero(self):
        """beta_0 = alpha_0 / ((q)_0 (xq)_0)"""
        pair = bailey_service.make_pair([Fraction(3, 4), Fraction(2)], Fraction(2, 3), Fraction(1, 3))
        assert pair.beta[0] == Fraction(3, 4)

    def test_check_pair_detects_tampering(self):
        pair = bailey_service.make_pair([Fraction(1), Fraction(-2), Fraction(5)], Fraction(3), Fraction(1, 2))
        assert bailey_service.check_pair(pair) is None
        broken = BaileyPair(
            n_max=pair.n_max,
            alpha=pair.alpha,
            beta=[pair.beta[0], pair.beta[1] + 1, pair.beta[2]],
            x=pair.x,
            q=pair.q,
        )
        assert bailey_service.check_pair(broken) == 1

    def test_lemma_preserves_pairs(self):
        """El lema de Bailey produce otro par respecto al mismo x"""
        pair = bailey_service.make_pair(
            [Fraction(1), Fraction(1, 3), Fraction(-2), Fraction(7, 5)], Fraction(3), Fraction(-1, 2)
        )
        transformed = bailey_service.lemma_transform(pair, Fraction(5, 2), Fraction(-4, 3))
        assert bailey_service.check_pair(transformed) is None

    def test_random_point_avoids_degenerate_values(self):
        rng = random.Random(0)
        for _ in range(50):
            point = bailey_service.random_point(rng, ("q", "x"))
            assert all(v not in (0, 1, -1) for v in point.values())


@pytest.mark.formal
class TestBaileyMachinery:
    """Verificador completo: lema, corolario, simetrizaciones y series en Q"""

    def test_small_run_passes(self):
        report = bailey_service.verify_bailey_machinery(3, samples=3, seed=7, q_order=12)
        assert report.passed, report.failures
        names = [d.check_name for d in report.details]
        assert names[:4] == [
            "bailey_lemma",
            "bailey_corollary",
            "bailey_symmetric_first",
            "bailey_symmetric_second",
        ]
        assert "delta_identity n=1" in names
        assert any(name.startswith("mid_relate c=1/2") for name in names)

    def test_seed_recorded_and_reproducible(self):
        first = bailey_service.verify_bailey_machinery(2, samples=2, seed=11, q_order=8)
        second = bailey_service.verify_bailey_machinery(2, samples=2, seed=11, q_order=8)
        assert first.parameters["seed"] == 11
        assert first.details == second.details

    def test_rejects_zero_n_max(self):
        with pytest.raises(ParameterError):
            bailey_service.verify_bailey_machinery(0)

    def test_rejects_zero_samples(self):
        with pytest.raises(ParameterError):
            bailey_service.verify_bailey_machinery(2, samples=0)
