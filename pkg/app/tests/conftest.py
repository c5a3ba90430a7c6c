# app/tests/conftest.py

"""
Configuración compartida de pytest para todos los tests
"""
import json
from fractions import Fraction

import pytest

from app.core.precision import make_context
from app.main import main
from app.models.suite import SuiteConfig


# Precisión por defecto de los tests numéricos
@pytest.fixture(scope="session")
def bits():
    """Bits de precisión de trabajo"""
    return 256


@pytest.fixture
def ctx(bits):
    """Contexto mpmath privado"""
    return make_context(bits)


@pytest.fixture
def small_suite_config():
    """Suite reducida para tests de integración"""
    return SuiteConfig(
        theorem_m=[1, 2],
        theorem_order=6,
        t_route_m_max=2,
        t_route_n_max=5,
        ag_m=[2],
        ag_q_order=20,
        jacobi_q_order=12,
        jacobi_x_range=4,
        h_m_max=2,
        h_order=6,
        bridge_m_max=2,
        bridge_q_order=10,
        qbinomial_n_max=5,
        bc_a_max=3,
        bc_q_order=12,
        bailey_n_max=3,
        bailey_samples=3,
        bailey_q_order=12,
        kashaev_n_max=6,
        omega_n_max=4,
        asymptotic_cases=[(1, 0)],
        asymptotic_n=[25, 50],
        poisson_m_max=2,
        poisson_taus=[("0", "1")],
        nearly_modular_m=[1],
        nearly_modular_n=[50],
        mellin_t0=["1/1000"],
        precision_bits=128,
    )


# Helpers de testing
class TestHelpers:
    """Clase con métodos helper para tests"""

    @staticmethod
    def run_cli(capsys, *argv):
        """Ejecutar el CLI con --json y devolver (código, informe)"""
        code = main(list(argv) + ["--json"])
        out = capsys.readouterr().out
        return code, json.loads(out)

    @staticmethod
    def frac(text: str) -> Fraction:
        return Fraction(text)


@pytest.fixture
def helpers():
    """Fixture para acceder a helpers"""
    return TestHelpers


# Markers personalizados para organizar tests
def pytest_configure(config):
    """Configuración adicional de pytest"""
    config.addinivalue_line(
        "markers", "slow: marca tests lentos"
    )
    config.addinivalue_line(
        "markers", "integration: tests de integración completos"
    )
    config.addinivalue_line(
        "markers", "unit: tests unitarios aislados"
    )
