"""Exact rational scalars.

gmpy2's mpq is used when available (it is much faster than Fraction);
the stdlib Fraction is a drop-in fallback.  No floating point is used
anywhere in this package.
"""

from __future__ import annotations

import random

try:
    from gmpy2 import mpq as _ratimpl
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _ratimpl


def QQ(num=0, den=None):
    """Exact rational from ints, rationals, or strings like ``-3/4``."""
    if den is None:
        return _ratimpl(num)
    return _ratimpl(num, den)


QQ0 = QQ(0)
QQ1 = QQ(1)

_RAT_TYPES = (type(QQ0), int)


def is_rational(x) -> bool:
    return isinstance(x, _RAT_TYPES)


def rational_text(x) -> str:
    """Canonical text form: ``a`` for integers, ``a/b`` otherwise."""
    return str(QQ(x))


def parse_rational(text: str):
    try:
        return QQ(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def random_rational(rng: random.Random, num_bound: int = 10, den_bound: int = 10,
                    nonzero: bool = False):
    """Small random rational; bounds keep exact arithmetic cheap."""
    while True:
        value = QQ(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))
        if value != 0 or not nonzero:
            return value
