"""Fixed-point conversion between document values and internal integers.

Every property carries a power-of-ten ``scale``; a document value v maps to
``round(v * scale)`` with half-up rounding.  Decimal arithmetic on the
string form keeps 99.95 * 100 at exactly 9995.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal, InvalidOperation


def is_power_of_ten(n: int) -> bool:
    if n < 1:
        return False
    while n % 10 == 0:
        n //= 10
    return n == 1


def scale_value(value: int | float | str, scale: int) -> int:
    """Document value to internal integer, rounding half-up."""
    try:
        d = Decimal(str(value))
    except InvalidOperation as exc:
        raise ValueError(f"not a number: {value!r}") from exc
    return int((d * scale).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def unscale_value(value: int, scale: int) -> int | float:
    """Internal integer back to a document value; int when representable."""
    if scale == 1:
        return value
    d = Decimal(value) / scale
    if d == d.to_integral_value():
        return int(d)
    return float(d)
