# app/models/suite.py

from typing import List, Tuple

from pydantic import BaseModel, Field


class SuiteConfig(BaseModel):
    """Matriz de aceptación; cada campo puede sobrescribirse desde JSON"""

    theorem_m: List[int] = [1, 2, 3, 4]
    theorem_order: int = Field(default=12, ge=0)
    t_route_m_max: int = Field(default=5, ge=1)
    t_route_n_max: int = Field(default=20, ge=0)
    ag_m: List[int] = [2, 3, 4]
    ag_q_order: int = Field(default=60, ge=0)
    jacobi_q_order: int = Field(default=40, ge=1)
    jacobi_x_range: int = Field(default=20, ge=0)
    h_m_max: int = Field(default=3, ge=1)
    h_order: int = Field(default=12, ge=0)
    bridge_m_max: int = Field(default=3, ge=1)
    bridge_q_order: int = Field(default=25, ge=0)
    qbinomial_n_max: int = Field(default=12, ge=1)
    bc_a_max: int = Field(default=8, ge=0)
    bc_q_order: int = Field(default=40, ge=0)
    bailey_n_max: int = Field(default=6, ge=1)
    bailey_samples: int = Field(default=100, ge=1)
    bailey_q_order: int = Field(default=30, ge=0)
    seed: int = 20240611

    kashaev_n_max: int = Field(default=60, ge=1)
    omega_n_max: int = Field(default=50, ge=1)
    asymptotic_cases: List[Tuple[int, int]] = [(1, 0), (2, 0), (2, 1)]
    asymptotic_n: List[int] = [25, 50, 100, 200]
    poisson_m_max: int = Field(default=4, ge=1)
    poisson_taus: List[Tuple[str, str]] = [("0", "1"), ("1/2", "1"), ("0", "2")]
    nearly_modular_m: List[int] = [1, 2]
    nearly_modular_n: List[int] = [50, 100, 200]
    mellin_t0: List[str] = ["1/100", "1/200"]
    precision_bits: int = Field(default=256, ge=16)

    class Config:
        extra = "forbid"
