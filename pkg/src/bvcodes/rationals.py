"""Small helpers for exact rationals (parsing, rendering, dyadics).

The only scalar type in this package is `fractions.Fraction`, which already
guarantees canonical form (reduced, positive denominator) and exact
arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b', an integer, or a decimal string into an exact Fraction."""
    return Fraction(text.strip())


def to_decimal_str(x: Fraction, places: int = 12) -> str:
    """Render x as a decimal string with exactly `places` digits.

    Rounding is half-away-from-zero on the last digit, computed in integer
    arithmetic so the rendering is deterministic.
    """
    sign = "-" if x < 0 else ""
    n, d = abs(x.numerator), x.denominator
    scaled = n * 10**places
    q, r = divmod(scaled, d)
    if 2 * r >= d:
        q += 1
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def is_dyadic(x: Fraction) -> bool:
    """True iff x = k / 2^n."""
    d = x.denominator
    return d & (d - 1) == 0


def floor_log2(x: Fraction) -> int:
    """Largest e with 2^e <= x (x > 0)."""
    if x <= 0:
        raise ValueError("floor_log2 needs x > 0")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    if Fraction(2) ** e > x:
        e -= 1
    if Fraction(2) ** (e + 1) <= x:
        e += 1
    return e


def ceil_log2(x: Fraction) -> int:
    """Smallest e with 2^e >= x (x > 0)."""
    e = floor_log2(x)
    return e if Fraction(2) ** e == x else e + 1


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational strictly inside the open interval (lo, hi).

    Stern-Brocot / continued-fraction descent; used to detect rational roots
    hiding in isolation boxes.
    """
    if not lo < hi:
        raise ValueError("empty interval")
    fl = math.floor(lo)
    if Fraction(fl + 1) < hi:
        return Fraction(fl + 1)
    if lo == fl:
        # (n, hi) with hi <= n+1: simplest is n + 1/(floor(1/(hi-n)) + 1)
        return fl + Fraction(1, math.floor(Fraction(1) / (hi - fl)) + 1)
    inner = simplest_in_interval(Fraction(1) / (hi - fl), Fraction(1) / (lo - fl))
    return fl + Fraction(1) / inner
