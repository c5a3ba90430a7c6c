# app/models/bailey.py

from fractions import Fraction
from typing import List

from pydantic import BaseModel, Field


class BaileyPair(BaseModel):
    """Par de Bailey (alpha, beta) evaluado en un punto racional (x, q)"""

    n_max: int = Field(..., ge=0)
    alpha: List[Fraction]
    beta: List[Fraction]
    x: Fraction
    q: Fraction

    class Config:
        arbitrary_types_allowed = True
