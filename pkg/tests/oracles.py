"""Independent floating-point and brute-force oracles.

These deliberately avoid the package's exact machinery: quadrature works on
float Horner evaluation, clustering by brute-force neighbor counts.  Exact
results are cross-checked against them at stated tolerances.
"""

from __future__ import annotations

from fractions import Fraction


def horner(coeffs: list[float], x: float) -> float:
    r = 0.0
    for c in reversed(coeffs):
        r = r * x + c
    return r


def _simpson(f, a: float, b: float) -> float:
    return (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b))


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-12, depth: int = 48) -> float:
    whole = _simpson(f, a, b)

    def rec(a, b, whole, tol, depth):
        m = (a + b) / 2.0
        left, right = _simpson(f, a, m), _simpson(f, m, b)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return rec(a, m, left, tol / 2.0, depth - 1) + rec(
            m, b, right, tol / 2.0, depth - 1
        )

    return rec(a, b, whole, tol, depth)


def quad_abs_poly(coeffs, a, b, tol: float = 1e-13) -> float:
    """Adaptive quadrature of |p| over [a, b]; pre-splits so the kinks at
    sign changes are localized."""
    cf = [float(c) for c in coeffs]
    fa, fb = float(a), float(b)
    if fb <= fa:
        return 0.0
    n = 64
    h = (fb - fa) / n
    total = 0.0
    for i in range(n):
        total += adaptive_simpson(
            lambda x: abs(horner(cf, x)), fa + i * h, fa + (i + 1) * h, tol
        )
    return total


def cluster_centers(xs: list[Fraction], radius: Fraction) -> list[Fraction]:
    """Points with the maximal number of neighbors within `radius`."""
    counts = [sum(1 for y in xs if abs(y - x) <= radius) for x in xs]
    best = max(counts)
    return [x for x, c in zip(xs, counts) if c == best]


def partition_sum(poly_eval, pts) -> Fraction:
    """sum |p(t_{i+1}) - p(t_i)| over a sorted partition."""
    total = Fraction(0)
    for i in range(len(pts) - 1):
        total += abs(poly_eval(pts[i + 1]) - poly_eval(pts[i]))
    return total
