"""Piecewise polynomials with exact rational breakpoints.

Closed under pointwise algebra (via common refinement) and differentiation.
This is the internal workhorse for smoothing kernels, convolutions and exact
error computations; evaluation at an interior breakpoint uses the right-hand
piece (the left-hand piece at the right domain endpoint).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .poly import (
    Poly,
    Rat,
    _abs_bound_on,
    integral_abs_info,
    integral_abs_le,
    isolate_roots,
)


@dataclass(frozen=True)
class PiecewisePoly:
    """Finitely many polynomial pieces over strictly increasing breakpoints."""

    breakpoints: tuple[Rat, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self):
        bp = tuple(Fraction(t) for t in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        if len(bp) < 2:
            raise ValueError("need at least two breakpoints")
        if any(bp[i] >= bp[i + 1] for i in range(len(bp) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bp) - 1:
            raise ValueError("piece count must be breakpoint count - 1")

    @staticmethod
    def from_poly(p: Poly, a: Rat = Fraction(0), b: Rat = Fraction(1)) -> PiecewisePoly:
        return PiecewisePoly((Fraction(a), Fraction(b)), (p,))

    @property
    def domain(self) -> tuple[Rat, Rat]:
        return self.breakpoints[0], self.breakpoints[-1]

    def piece_at(self, x: Rat) -> Poly:
        bp = self.breakpoints
        if not bp[0] <= x <= bp[-1]:
            raise ValueError(f"{x} outside domain {self.domain}")
        if x == bp[-1]:
            return self.pieces[-1]
        lo, hi = 0, len(self.pieces) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if x < bp[mid + 1]:
                hi = mid
            else:
                lo = mid + 1
        return self.pieces[lo]

    def __call__(self, x: Rat) -> Rat:
        return self.piece_at(Fraction(x))(Fraction(x))

    def refine_to(self, cuts) -> PiecewisePoly:
        """Same function over a refined breakpoint set."""
        a, b = self.domain
        pts = sorted(set(self.breakpoints) | {Fraction(c) for c in cuts if a < Fraction(c) < b})
        pieces = tuple(self.piece_at((pts[i] + pts[i + 1]) / 2) for i in range(len(pts) - 1))
        return PiecewisePoly(tuple(pts), pieces)

    def _zip(self, other: PiecewisePoly, op: Callable[[Poly, Poly], Poly]) -> PiecewisePoly:
        if self.domain != other.domain:
            raise ValueError("domain mismatch")
        pts = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = []
        for i in range(len(pts) - 1):
            mid = (pts[i] + pts[i + 1]) / 2
            pieces.append(op(self.piece_at(mid), other.piece_at(mid)))
        return PiecewisePoly(tuple(pts), tuple(pieces))

    def __add__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self._zip(other, lambda p, q: p + q)

    def __sub__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self._zip(other, lambda p, q: p - q)

    def __neg__(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(-p for p in self.pieces))

    def scale(self, s: Rat) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p.scale(s) for p in self.pieces))

    def add_poly(self, q: Poly) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p + q for p in self.pieces))

    def sub_poly(self, q: Poly) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p - q for p in self.pieces))

    def mul_poly(self, q: Poly) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p * q for p in self.pieces))

    def derivative(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p.derivative() for p in self.pieces))

    def integral(self) -> Rat:
        """Exact plain integral over the whole domain."""
        bp = self.breakpoints
        return sum(
            (p.integral(bp[i], bp[i + 1]) for i, p in enumerate(self.pieces)),
            Fraction(0),
        )

    def is_continuous(self) -> bool:
        bp = self.breakpoints
        return all(
            self.pieces[i](bp[i + 1]) == self.pieces[i + 1](bp[i + 1])
            for i in range(len(self.pieces) - 1)
        )

    def jumps(self) -> list[Rat]:
        """Value jumps (right minus left) at interior breakpoints."""
        bp = self.breakpoints
        return [
            self.pieces[i + 1](bp[i + 1]) - self.pieces[i](bp[i + 1])
            for i in range(len(self.pieces) - 1)
        ]


def pw_integral_abs(f: PiecewisePoly) -> Rat:
    """Exact integral of |f| over the domain (piecewise, canonical value)."""
    bp = f.breakpoints
    return sum(
        (integral_abs_info(p, bp[i], bp[i + 1]).value for i, p in enumerate(f.pieces)),
        Fraction(0),
    )


def pw_integral_abs_upper(f: PiecewisePoly) -> Rat:
    bp = f.breakpoints
    return sum(
        (integral_abs_info(p, bp[i], bp[i + 1]).upper for i, p in enumerate(f.pieces)),
        Fraction(0),
    )


def pw_integral_abs_le(f: PiecewisePoly, bound: Rat) -> bool:
    """Decide int |f| <= bound exactly, refining all pieces jointly."""
    from .poly import _REFINE_CAP_BITS, _assemble, _canonical_marks, CANONICAL_BITS
    from .errors import PrecisionExhausted
    from .poly import _refine_mark

    bound = Fraction(bound)
    bp = f.breakpoints
    work = []
    for i, p in enumerate(f.pieces):
        if p.is_zero():
            continue
        c, marks = _canonical_marks(p)
        work.append((p, bp[i], bp[i + 1], c, [m.copy() for m in marks]))
    bits = CANONICAL_BITS
    while True:
        total = err = Fraction(0)
        all_exact = True
        for p, a, b, _c, marks in work:
            v, e, exact = _assemble(p, a, b, marks)
            total += v
            err += e
            all_exact = all_exact and exact
        if all_exact:
            return total <= bound
        if total + err <= bound:
            return True
        if total > bound:
            return False
        bits *= 2
        if bits > _REFINE_CAP_BITS:
            raise PrecisionExhausted(f"cannot separate int|f| from {bound}")
        width = Fraction(1, 1 << bits)
        for p, a, b, c, marks in work:
            for m in marks:
                if not (m.hi <= a or m.lo >= b):
                    _refine_mark(m, c, width)


def pw_variation_upper(f: PiecewisePoly) -> Rat:
    """Upper bound on the variation of f: piecewise int|p'| plus jump sizes."""
    bp = f.breakpoints
    tot = sum(
        (
            integral_abs_info(p.derivative(), bp[i], bp[i + 1]).upper
            for i, p in enumerate(f.pieces)
        ),
        Fraction(0),
    )
    return tot + sum((abs(j) for j in f.jumps()), Fraction(0))


def pw_variation(f: PiecewisePoly) -> Rat:
    """Canonical variation value (exact for rational critical points)."""
    bp = f.breakpoints
    tot = sum(
        (
            integral_abs_info(p.derivative(), bp[i], bp[i + 1]).value
            for i, p in enumerate(f.pieces)
        ),
        Fraction(0),
    )
    return tot + sum((abs(j) for j in f.jumps()), Fraction(0))


def pw_sup_bound(f: PiecewisePoly, tol: Rat = Fraction(1, 1 << 20)) -> Rat:
    """Rational upper bound U on sup |f| with U - sup|f| <= tol.

    Per piece, |p| is maximal at an endpoint or a critical point; critical
    points are enclosed by root isolation of p' and |p| over each enclosure
    is bounded by the midpoint value plus width * sup|p'|.
    """
    tol = Fraction(tol)
    best = Fraction(0)
    bp = f.breakpoints
    for i, p in enumerate(f.pieces):
        lo, hi = bp[i], bp[i + 1]
        best = max(best, abs(p(lo)), abs(p(hi)))
        d = p.derivative()
        if d.is_zero():
            continue
        for (bl, bh) in isolate_roots(d, lo, hi).intervals:
            # |p| over the enclosure <= |p(mid)| + width * sup_box|p'|;
            # shrink the box until that slack drops below tol
            while bl != bh:
                slack = (bh - bl) * _abs_bound_on(d, bl, bh)
                if slack <= tol:
                    break
                shrunk = isolate_roots(d, bl, bh, width=(bh - bl) / 256).intervals
                if not shrunk:
                    break
                bl, bh = shrunk[0]
            if bl == bh:
                best = max(best, abs(p(bl)))
            else:
                best = max(best, abs(p((bl + bh) / 2)) + (bh - bl) * _abs_bound_on(d, bl, bh))
    return best
