# app/models/character.py

from typing import Dict, List, Tuple

from pydantic import BaseModel, Field, model_validator


class PeriodicCharacter(BaseModel):
    """Función periódica entera de módulo p guardada como tabla de un periodo"""

    name: str = ""
    modulus: int = Field(..., gt=0)
    values: Tuple[int, ...]

    class Config:
        frozen = True

    @model_validator(mode="after")
    def check_table(self):
        if len(self.values) != self.modulus:
            raise ValueError(
                f"values must have length {self.modulus}, got {len(self.values)}"
            )
        return self

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    @property
    def period_sum(self) -> int:
        return sum(self.values)

    @property
    def has_mean_zero(self) -> bool:
        return self.period_sum == 0

    def support(self) -> List[Tuple[int, int]]:
        """Residuos con valor no nulo, como pares (residuo, signo)"""
        return [(r, v) for r, v in enumerate(self.values) if v]

    def summary(self) -> Dict:
        """Forma serializada en informes: {modulus, support}"""
        return {
            "name": self.name,
            "modulus": self.modulus,
            "support": [[r, v] for r, v in self.support()],
        }
