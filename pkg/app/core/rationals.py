# app/core/rationals.py

from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction]


def normalize(value) -> RationalLike:
    """Reducir a int cuando el denominador es 1 (más rápido en bucles)"""
    if isinstance(value, int):
        return value
    if isinstance(value, Rational):
        if value.denominator == 1:
            return int(value.numerator)
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"Exact rational expected, got {type(value).__name__}")


def format_rational(value) -> str:
    """Codificar como "p/q" (siempre con denominador)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inversa de format_rational; acepta también enteros y decimales finitos"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational literal: {text!r}") from exc
