"""Bridge between mpmath values (the public type) and gmpy2 mpfr (hot loops).

The long summation loops run on gmpy2, whose per-operation overhead is
several times lower than mpmath's.  gmpy2 contexts are thread local.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
import mpmath as mp
from gmpy2 import mpfr

__all__ = ["MPFR", "mpfr", "precision", "to_mpfr", "to_mpf"]


def precision(bits: int):
    return gmpy2.context(gmpy2.get_context(), precision=bits)


MPFR = type(mpfr(0))


def to_mpfr(value) -> mpfr:
    """Convert int, Fraction, float, mpf or mpfr at the current gmpy2 precision."""
    if type(value) is MPFR:
        return value
    if isinstance(value, int):
        return mpfr(value)
    if isinstance(value, Fraction):
        return mpfr(gmpy2.mpq(value.numerator, value.denominator))
    if isinstance(value, mp.mpf):
        sign, man, exp, _ = value._mpf_
        if not man:
            if value._mpf_ == mp.mpf(0)._mpf_:
                return mpfr(0)
            return mpfr(str(value))
        m = mpfr(int(man))
        m = gmpy2.mul_2exp(m, int(exp))
        return -m if sign else m
    if isinstance(value, float):
        return mpfr(value)
    return mpfr(str(value))


def to_mpf(value) -> mp.mpf:
    """Convert an mpfr to mpf without a decimal round trip."""
    if not gmpy2.is_finite(value):
        return mp.mpf(str(value))
    if value == 0:
        return mp.mpf(0)
    man, exp = value.as_mantissa_exp()
    return mp.mpf((int(man), int(exp)))
