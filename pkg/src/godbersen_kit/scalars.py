"""Arithmetic modes and scalar coercion.

Two modes exist everywhere in the package:

* ``"exact"``  -- arbitrary-precision rationals.  Backed by ``gmpy2.mpq``
  when available (much faster), otherwise ``fractions.Fraction``; both keep
  fractions reduced with positive denominator, so canonical form is free.
* ``"float"``  -- IEEE float64 with tolerance-based predicates.

Floats never silently enter exact arithmetic: :func:`exact_scalar` rejects
them, and deliberate conversion goes through :func:`rationalize`.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as _rational
    from gmpy2 import mpz as _integer

    _RATIONAL_TYPES = (type(_rational(1)), Fraction)
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency in practice
    _rational = Fraction
    _integer = int
    _RATIONAL_TYPES = (Fraction,)

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: Relative epsilon for float-mode sign predicates.
FLOAT_EPS = 1e-12


def rational(numerator, denominator=1):
    """Exact rational from integers (or a 'p/q' string)."""
    return _rational(numerator, denominator)


_INT_TYPES = (int, type(_integer(1)))


def is_rational(x) -> bool:
    return isinstance(x, _RATIONAL_TYPES) or isinstance(x, _INT_TYPES)


def exact_scalar(x):
    """Coerce ``x`` to an exact rational; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, float):
        raise TypeError(
            "refusing to coerce float %r into exact arithmetic; use rationalize()" % x
        )
    if isinstance(x, str):
        return _rational(x)
    return _rational(x)


def float_scalar(x):
    """Coerce ``x`` to a finite float."""
    v = float(x)
    if not math.isfinite(v):
        raise ValueError("non-finite float scalar: %r" % x)
    return v


def as_scalar(x, mode):
    if mode == EXACT:
        return exact_scalar(x)
    if mode == FLOAT:
        return float_scalar(x)
    raise ValueError("unknown mode %r" % mode)


def rationalize(x, denominator=1 << 20):
    """Nearest rational with the given denominator (deliberate float -> exact)."""
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("cannot rationalize %r" % x)
        return _rational(round(x * denominator), denominator)
    return exact_scalar(x)


def scalar_to_float(x) -> float:
    return float(x)


def infer_mode(values):
    """Mode implied by a flat iterable of coordinates; mixing is an error."""
    saw_float = saw_exact = False
    for v in values:
        if isinstance(v, float):
            saw_float = True
        else:
            saw_exact = True
    if saw_float and saw_exact:
        raise TypeError("mixed float and exact coordinates in one value")
    return FLOAT if saw_float else EXACT


def sign(x, eps=0):
    """-1/0/+1 with a symmetric dead zone of width eps (0 in exact mode)."""
    if x > eps:
        return 1
    if x < -eps:
        return -1
    return 0


def scalar_to_json(x):
    if isinstance(x, float):
        return x
    return str(_rational(x))


def scalar_from_json(v, mode):
    if mode == FLOAT:
        return float_scalar(v)
    if isinstance(v, float):
        raise TypeError("exact-mode JSON must use fraction strings, got float %r" % v)
    return exact_scalar(v)


def bit_size(x) -> int:
    """Bits in the numerator/denominator; coordinate-growth metric for tests."""
    if isinstance(x, float):
        return 53
    q = _rational(x)
    return max(int(q.numerator).bit_length(), int(q.denominator).bit_length())
