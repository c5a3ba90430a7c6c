# app/models/results.py

from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.core.precision import complex_payload, mpf_dec
from app.core.rationals import format_rational
from app.core.series import TSeries


class TSeriesValue(BaseModel):
    """T_m^(a)(n) exacto"""

    m: int = Field(..., ge=1)
    a: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    value: Fraction
    route: str = "bernoulli"

    class Config:
        arbitrary_types_allowed = True

    def as_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "a": self.a, "n": self.n, "value": format_rational(self.value), "route": self.route}


class XSeriesResult(BaseModel):
    """Comparación de la t-expansión por multisuma contra la de valores L"""

    m: int
    a: int
    order: int
    lhs: TSeries
    rhs: TSeries
    equal_through: int
    mismatch_order: Optional[int] = None

    class Config:
        arbitrary_types_allowed = True

    @property
    def passed(self) -> bool:
        return self.mismatch_order is None

    def as_dict(self) -> Dict[str, Any]:
        payload = {
            "m": self.m,
            "a": self.a,
            "order": self.order,
            "equal_through": self.equal_through,
            "lhs": [format_rational(c) for c in self.lhs],
            "rhs": [format_rational(c) for c in self.rhs],
        }
        if self.mismatch_order is not None:
            d = self.mismatch_order
            payload["mismatch"] = {
                "order": d,
                "lhs": format_rational(self.lhs[d]),
                "rhs": format_rational(self.rhs[d]),
            }
        return payload


class NumericCheck(BaseModel):
    """lhs contra una expansión asintótica truncada"""

    check_name: str
    lhs: Any
    rhs: Any
    residual: Any
    first_omitted: Any
    terms_used: int
    precision_bits: int
    label: str = ""

    class Config:
        arbitrary_types_allowed = True

    @property
    def passed(self) -> bool:
        return self.residual <= 2 * self.first_omitted

    def as_dict(self) -> Dict[str, Any]:
        return {
            "check_name": self.check_name,
            "label": self.label,
            "lhs": complex_payload(self.lhs),
            "rhs": complex_payload(self.rhs),
            "residual": mpf_dec(self.residual, 12),
            "first_omitted": mpf_dec(self.first_omitted, 12),
            "terms_used": self.terms_used,
            "precision_bits": self.precision_bits,
            "passed": self.passed,
        }


class ModularMatrix(BaseModel):
    """Matriz m x m de la transformación S de los Phi_m"""

    m: int
    entries: List[List[Any]]
    precision_bits: int

    class Config:
        arbitrary_types_allowed = True

    def apply(self, vector: List[Any]) -> List[Any]:
        return [sum(row[j] * vector[j] for j in range(self.m)) for row in self.entries]

    def square_residual(self):
        """max |(M M - I)_{ij}|"""
        worst = 0
        for i in range(self.m):
            for j in range(self.m):
                s = sum(self.entries[i][k] * self.entries[k][j] for k in range(self.m))
                worst = max(worst, abs(s - (1 if i == j else 0)))
        return worst

    def symmetry_residual(self):
        worst = 0
        for i in range(self.m):
            for j in range(i + 1, self.m):
                worst = max(worst, abs(self.entries[i][j] - self.entries[j][i]))
        return worst


class ThetaVector(BaseModel):
    """Componentes ordenadas (a = m-1, ..., 1, 0)"""

    m: int
    components: List[Any]

    class Config:
        arbitrary_types_allowed = True

    def as_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "order": [self.m - 1 - i for i in range(self.m)],
            "components": [complex_payload(z) for z in self.components],
        }
