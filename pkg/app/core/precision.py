# app/core/precision.py

"""Contextos mpmath por evaluación y codificación de números para informes"""
from typing import Dict

import mpmath
from mpmath import libmp

from app.core.config import settings
from app.core.errors import require


def make_context(precision_bits: int, extra_guard: int = 0) -> mpmath.MPContext:
    """
    Contexto privado con precision_bits + GUARD_BITS + extra_guard.
    Cada evaluación usa el suyo: nunca se toca mpmath.mp global.
    """
    require(precision_bits >= 16, f"precision must be >= 16 bits, got {precision_bits}")
    ctx = mpmath.MPContext()
    ctx.prec = precision_bits + settings.GUARD_BITS + extra_guard
    return ctx


def to_mp(ctx: mpmath.MPContext, value):
    """Racional exacto -> mpf sin pasar por float"""
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.convert(value)


def mpf_hex(value) -> str:
    """Mantisa binaria exacta en hexadecimal: [-]0x<man>p<exp>"""
    sign, man, exp, _ = value._mpf_
    if not man:
        return "0x0p+0"
    return f"{'-' if sign else ''}0x{int(man):x}p{exp:+d}"


def mpf_dec(value, digits: int = 30) -> str:
    return libmp.to_str(value._mpf_, digits)


def complex_payload(value, digits: int = 30) -> Dict[str, str]:
    """{re_hex, im_hex, re_dec, im_dec} para mpc o mpf"""
    ctx = mpmath.mp if not hasattr(value, "context") else value.context
    z = ctx.mpc(value)
    return {
        "re_hex": mpf_hex(z.real),
        "im_hex": mpf_hex(z.imag),
        "re_dec": mpf_dec(z.real, digits),
        "im_dec": mpf_dec(z.imag, digits),
    }


def complex_summary(payload: Dict[str, str]) -> str:
    """Línea legible "re + im*i" / "re - im*i" a partir de complex_payload"""
    im = payload["im_dec"]
    sign, magnitude = ("-", im[1:]) if im.startswith("-") else ("+", im)
    return f"{payload['re_dec']} {sign} {magnitude}*i"
