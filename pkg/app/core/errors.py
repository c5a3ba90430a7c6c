# app/core/errors.py

"""Errores del verificador"""


class VerificationError(Exception):
    """Base de todos los errores propios del proyecto"""


class ParameterError(VerificationError, ValueError):
    """Parámetros fuera de rango (a >= m, t0 <= 0, N = 0, ...)"""


class IntegralityError(VerificationError, ArithmeticError):
    """Exponente no entero encontrado durante una sustitución"""


class ConfigError(VerificationError, ValueError):
    """Fichero de configuración de suite mal formado"""


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def check_ma(m: int, a: int, min_m: int = 1) -> None:
    """Validar el par (m, a) común a casi todas las operaciones"""
    require(isinstance(m, int) and m >= min_m, f"m must be an integer >= {min_m}, got {m}")
    require(isinstance(a, int) and 0 <= a <= m - 1, f"a must be in 0..{m - 1}, got {a}")
