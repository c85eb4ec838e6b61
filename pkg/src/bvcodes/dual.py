"""Dual-functional evaluation, the non-computability gadget, and a
polynomial monotonicity decomposition.

The pairing T(h) = lim_k int h * p_k' is well defined on every code, but
computable (and code-independent) only for test functions vanishing at both
endpoints, where integration by parts turns it into -lim int h' * p_k with
a tail controlled by ||h'||_inf and the Cauchy rate.  `dual_eval_c0`
returns that enclosure.

For general h (even h = 1) the value is not computable from an arbitrary
code; this module instead builds the explicit family of codes whose
endpoint values encode a universally quantified decidable predicate.  Each
gadget is a downward ramp of width 2^(-i'-1) switched on when a
counterexample witness i' is found; a base-3 weighted sum embeds countably
many gadgets into one code whose endpoint difference decodes every digit.
Decoding is therefore offered only on codes carrying this provenance.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .codes import BVCode, bvcode_new
from .errors import (
    BoundaryViolation,
    DepthExhausted,
    NotAGadgetCode,
    ProjectionBudgetExceeded,
)
from .mollify import _LegendreFit, scaled_bump
from .piecewise import (
    PiecewisePoly,
    pw_integral_abs,
    pw_integral_abs_le,
    pw_sup_bound,
)
from .poly import (
    Poly,
    Rat,
    dyadic_round,
    integral_abs_info,
    isolate_roots,
    poly_variation,
)


# ---------------------------------------------------------------------------
# Test functions and the dual enclosure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestFn:
    """Continuous piecewise-polynomial test function on [0,1]."""

    __test__ = False  # not a pytest class

    pw: PiecewisePoly

    def __post_init__(self):
        if self.pw.domain != (Fraction(0), Fraction(1)):
            raise ValueError("test functions live on [0,1]")
        if not self.pw.is_continuous():
            raise ValueError("test function must be continuous at breakpoints")

    @staticmethod
    def from_poly(p: Poly) -> "TestFn":
        return TestFn(PiecewisePoly.from_poly(p))

    @property
    def vanishes_at_boundary(self) -> bool:
        return self.pw(Fraction(0)) == 0 and self.pw(Fraction(1)) == 0

    def derivative_sup_bound(self, tol: Rat = Fraction(1, 1 << 20)) -> Rat:
        return pw_sup_bound(self.pw.derivative(), tol)


@dataclass(frozen=True)
class DualInterval:
    """Enclosure of the dual value at a given prefix level."""

    lo: Rat
    hi: Rat
    level: int

    @property
    def width(self) -> Rat:
        return self.hi - self.lo

    def contains(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "DualInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def dual_eval_c0(f: BVCode, h: TestFn, k: int) -> DualInterval:
    """Enclosure of T(h) = lim_j int h * p_j' for boundary-vanishing h.

    Integration by parts gives the exact center -int h' * p_{k+1}; the tail
    |T(h) - center| <= ||h'||_inf * 2^-k follows from the Cauchy rate, so
    the interval width is ||h'||_inf * 2^(-k+1).  Requires k <= depth - 1.
    """
    if not h.vanishes_at_boundary:
        raise BoundaryViolation(
            f"h(0) = {h.pw(Fraction(0))}, h(1) = {h.pw(Fraction(1))}; both must be 0"
        )
    if k + 1 > f.depth:
        raise DepthExhausted(f"level {k} needs prefix entry {k + 1} > depth {f.depth}")
    center = -h.pw.derivative().mul_poly(f.prefix[k + 1]).integral()
    radius = h.derivative_sup_bound() * Fraction(1, 1 << k)
    return DualInterval(lo=center - radius, hi=center + radius, level=k)


# ---------------------------------------------------------------------------
# The endpoint-decoding gadget family
# ---------------------------------------------------------------------------


class Pi01Gadget:
    """Decidable counterexample test phi(n, i) with a monotone witness cache.

    `test(n, i)` must be total for every queried pair and return True iff i
    witnesses the failure of statement n; once a minimal witness is found it
    persists for all deeper queries.
    """

    def __init__(self, test: Callable[[int, int], bool]):
        self._test = test
        self._witness: dict[int, int] = {}
        self._checked_to: dict[int, int] = {}
        self._lock = threading.Lock()

    @staticmethod
    def from_table(table: Mapping[int, int | None]) -> "Pi01Gadget":
        fixed = {int(n): (None if w is None else int(w)) for n, w in table.items()}
        return Pi01Gadget(lambda n, i: fixed.get(n) is not None and i == fixed[n])

    def witness(self, n: int, k: int) -> int | None:
        """Minimal i' <= k with test(n, i') true, else None."""
        with self._lock:
            if n in self._witness and self._witness[n] <= k:
                return self._witness[n]
            start = self._checked_to.get(n, -1) + 1
            for i in range(start, k + 1):
                self._checked_to[n] = i
                if self._test(n, i):
                    self._witness[n] = i
                    return i
            w = self._witness.get(n)
            return w if w is not None and w <= k else None


def ramp_piecewise(witness: int, m: int = 2) -> PiecewisePoly:
    """The downward ramp 1 - 2 * int_0^x kernel_delta, delta = 2^(-witness-1).

    Equals 1 at x = 0 and 0 from x = delta on; its L1 norm is
    delta * c_m/(m+1) < delta and its variation is exactly 1.
    """
    delta = Fraction(1, 1 << (witness + 1))
    sb = scaled_bump(m, delta)
    anti = sb.poly.antiderivative()
    left = Poly.const(1) - (anti - Poly.const(anti(Fraction(0)))).scale(2)
    return PiecewisePoly((Fraction(0), delta, Fraction(1)), (left, Poly.zero()))


_RAMP_CACHE: dict[tuple, Poly] = {}


def ramp_projection(witness: int, m: int = 2, max_degree: int = 64) -> Poly:
    """Polynomial ramp entry with exact endpoint values 1 and 0.

    The fit runs in derivative space: d approximates the ramp derivative
    (a single negative kernel bump) with int_0^1 d = -1 held exactly, so
    q = 1 + int_0^x d satisfies q(0) = 1 and q(1) = 0 exactly -- endpoint
    decoding never sees projection error.  The L1 error of q is at most the
    derivative fit error (target delta/2), and the variation is at most
    1 + that error.
    """
    key = (witness, m, max_degree)
    if key in _RAMP_CACHE:
        return _RAMP_CACHE[key]
    delta = Fraction(1, 1 << (witness + 1))
    sb = scaled_bump(m, delta)
    target_d = PiecewisePoly(
        (Fraction(0), delta, Fraction(1)),
        (sb.poly.scale(-2), Poly.zero()),
    )
    fit = _LegendreFit(target_d)
    sigma = delta / 2
    degree = 4
    best = None
    while degree <= max_degree:
        d = dyadic_round(fit.fit(degree))
        # re-pin the exact mass after snapping so q(1) = 0 exactly
        mass = d.integral(Fraction(0), Fraction(1))
        d = d + Poly.const(-1 - mass)
        resid = target_d.sub_poly(d)
        if pw_integral_abs_le(resid, sigma):
            q = Poly.const(1) + d.antiderivative()
            assert q(Fraction(0)) == 1 and q(Fraction(1)) == 0
            _RAMP_CACHE[key] = q
            return q
        err = pw_integral_abs(resid)
        best = err if best is None else min(best, err)
        degree += 4
    raise ProjectionBudgetExceeded(max_degree, best)


def reversal_gadget(g: Pi01Gadget, n: int, k: int, m: int = 2, max_degree: int = 64) -> Poly:
    """Level-k prefix entry of the gadget code for statement n.

    Zero while no witness i' <= k exists; once one appears, the fixed
    projected ramp of width 2^(-i'-1).  Consecutive entries then satisfy
    the Cauchy rate because the ramp's L1 norm is below 2^(-i'-1).
    """
    w = g.witness(n, k)
    if w is None:
        return Poly.zero()
    return ramp_projection(w, m, max_degree)


GADGET_KIND = "cantor-gadget"


def cantor_sum(
    g: Pi01Gadget,
    n_count: int,
    depth: int,
    m: int = 2,
    max_degree: int = 64,
) -> BVCode:
    """Base-3 weighted sum of the first n_count gadget codes.

    Entry k is sum_n 2/3^(n+1) * gadget entry(n, k) -- the standard middle
    thirds embedding, under which the endpoint difference lands in [0,1]
    and statement n is read off the n-th ternary digit.  The variation
    bound is sum_n 4/3^(n+1); truncating statements n >= n_count leaves a
    decoding slack of 3^(-n_count).
    """
    if n_count < 1:
        raise ValueError("need at least one statement")
    prefix = []
    for k in range(depth + 1):
        entry = Poly.zero()
        for n in range(n_count):
            entry = entry + reversal_gadget(g, n, k, m, max_degree).scale(
                Fraction(2, 3 ** (n + 1))
            )
        prefix.append(entry)
    v = sum((Fraction(4, 3 ** (n + 1)) for n in range(n_count)), Fraction(0))
    witnesses = [g.witness(n, depth) for n in range(n_count)]
    return bvcode_new(
        prefix,
        v,
        provenance={
            "kind": GADGET_KIND,
            "n_count": n_count,
            "depth": depth,
            "m": m,
            "witnesses": witnesses,
            "truncation_slack": Fraction(1, 3**n_count),
        },
    )


def decode_pi01(code: BVCode, n: int, k: int) -> str:
    """Decode statement n from the endpoint difference of prefix entry k.

    Returns 'holds-so-far', 'refuted', or 'unknown'.  Endpoint evaluation
    is justified only for codes built by `cantor_sum` (exact endpoint
    constraints); anything else raises NotAGadgetCode.  Refutation is
    permanent: deeper k can flip holds-so-far to refuted, never back.
    """
    prov = code.provenance
    if not prov or prov.get("kind") != GADGET_KIND:
        raise NotAGadgetCode("endpoint decoding requires cantor_sum provenance")
    if k > code.depth:
        raise DepthExhausted(f"level {k} > stored depth {code.depth}")
    if n >= prov["n_count"]:
        return "unknown"  # beyond the truncation: inside the slack margin
    p = code.prefix[k]
    x = -(p(Fraction(1)) - p(Fraction(0)))
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(n + 1):
        w = hi - lo
        if x <= lo + w / 3:
            digit = 0
            hi = lo + w / 3
        elif x >= lo + 2 * w / 3:
            digit = 2
            lo = lo + 2 * w / 3
        else:
            return "unknown"
    return "refuted" if digit == 2 else "holds-so-far"


# ---------------------------------------------------------------------------
# Monotonicity decomposition for polynomial representatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonotonePiece:
    lo: Rat
    hi: Rat
    direction: str  # "nondecreasing" | "nonincreasing"


def jordan_poly(p: Poly) -> tuple[MonotonePiece, ...]:
    """Split [0,1] at the critical points of p into monotone pieces.

    Constant polynomials count as nondecreasing.  Breakpoints are exact
    critical points when rational, else canonical enclosure midpoints; the
    direction on each piece is the exact sign of p' strictly between the
    enclosures, so sum |p(hi) - p(lo)| over pieces recovers the variation
    (exactly so for rational critical points).
    """
    d = p.derivative()
    if d.is_zero():
        return (MonotonePiece(Fraction(0), Fraction(1), "nondecreasing"),)
    boxes = [
        (lo, hi)
        for (lo, hi) in isolate_roots(d, Fraction(0), Fraction(1)).intervals
        if Fraction(0) < (lo if lo == hi else (lo + hi) / 2) < Fraction(1)
    ]
    cuts = [Fraction(0)]
    gaps = []  # sample interval strictly outside every enclosure
    prev_end = Fraction(0)
    for (lo, hi) in boxes:
        cuts.append(lo if lo == hi else (lo + hi) / 2)
        gaps.append((prev_end, lo))
        prev_end = hi
    cuts.append(Fraction(1))
    gaps.append((prev_end, Fraction(1)))
    pieces = []
    for i in range(len(cuts) - 1):
        glo, ghi = gaps[i]
        sample = (glo + ghi) / 2 if glo < ghi else cuts[i]
        s = d(sample)
        direction = "nonincreasing" if s < 0 else "nondecreasing"
        pieces.append(MonotonePiece(cuts[i], cuts[i + 1], direction))
    return tuple(pieces)


def jordan_variation(p: Poly) -> Rat:
    """Sum of |p(hi) - p(lo)| over the monotone pieces."""
    return sum(
        (abs(p(piece.hi) - p(piece.lo)) for piece in jordan_poly(p)), Fraction(0)
    )


def check_jordan_consistency(p: Poly) -> bool:
    """jordan_variation must reproduce poly_variation (exact for rational
    critical points, enclosure-close otherwise)."""
    info = integral_abs_info(p.derivative(), Fraction(0), Fraction(1))
    jv = jordan_variation(p)
    if info.exact:
        return jv == info.value
    return abs(jv - info.value) <= 2 * info.error_bound + Fraction(1, 1 << 30)
