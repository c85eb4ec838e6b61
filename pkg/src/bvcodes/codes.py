"""Cauchy codes for L1 points and bounded-variation points.

An L1 point is represented by a finite prefix (p_0, ..., p_K) of rational
polynomials with ||p_k - p_{k+1}||_1 <= 2^-k; a BV point additionally
carries a rational v with int_0^1 |p_k'| <= v for every stored k.  All
invariants are decided exactly at construction, so an accepted code is a
re-checkable certificate: any independent pass over the stored prefix must
reach the same verdict.

Finite prefixes replace infinite sequences throughout; statements about the
coded limit hold "at depth K" with an explicit 2^-(K-1) tail slack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    DepthExhausted,
    GapTooSmall,
    RateViolation,
    VariationViolation,
)
from .poly import (
    Poly,
    Rat,
    integral_abs_info,
    integral_abs_le,
    poly_variation_upper,
)
from .rationals import ceil_log2

DEFAULT_DEPTH = 24


def _rate_bound(k: int) -> Fraction:
    return Fraction(1, 1 << k)


@dataclass(frozen=True)
class L1Code:
    """Validated prefix (p_0, ..., p_K) with ||p_k - p_{k+1}||_1 <= 2^-k."""

    prefix: tuple[Poly, ...]

    @property
    def depth(self) -> int:
        return len(self.prefix) - 1

    def deepest(self) -> Poly:
        return self.prefix[-1]

    def tail_slack(self) -> Fraction:
        """Bound on ||limit - p_K||_1 implied by the rate: 2^-(K-1)."""
        return Fraction(2, 1 << self.depth)


@dataclass(frozen=True)
class BVCode:
    """L1 code plus a rational bound v on the variation of every entry."""

    code: L1Code
    v: Rat
    provenance: dict | None = field(default=None, compare=False)

    @property
    def prefix(self) -> tuple[Poly, ...]:
        return self.code.prefix

    @property
    def depth(self) -> int:
        return self.code.depth

    def deepest(self) -> Poly:
        return self.code.deepest()

    def tail_slack(self) -> Fraction:
        return self.code.tail_slack()


@dataclass(frozen=True)
class NormInterval:
    """Rational enclosure of an L1 norm."""

    lo: Rat
    hi: Rat

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Rat:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Rat:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rat) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "NormInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


class ModulusFn:
    """Monotone nondecreasing map n -> h(n) on the naturals."""

    def __init__(self, rule: Callable[[int], int], table: tuple[int, ...] | None = None):
        self._rule = rule
        self._table = table
        self._queried: dict[int, int] = {}

    @staticmethod
    def from_table(values: Sequence[int]) -> "ModulusFn":
        tab = tuple(int(v) for v in values)
        if any(tab[i] > tab[i + 1] for i in range(len(tab) - 1)):
            raise ValueError("modulus table must be nondecreasing")
        return ModulusFn(lambda n: tab[min(n, len(tab) - 1)], table=tab)

    @staticmethod
    def from_rule(rule: Callable[[int], int]) -> "ModulusFn":
        return ModulusFn(rule)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("modulus argument must be >= 0")
        v = int(self._rule(n))
        for m, w in self._queried.items():
            if (m <= n and w > v) or (m >= n and w < v):
                raise ValueError("modulus rule is not monotone on queried points")
        self._queried[n] = v
        return v


def l1code_new(prefix: Sequence[Poly]) -> L1Code:
    """Validate the Cauchy rate exactly; RateViolation carries the witness."""
    prefix = tuple(prefix)
    if not prefix:
        raise ValueError("prefix must be nonempty")
    for k in range(len(prefix) - 1):
        diff = prefix[k] - prefix[k + 1]
        bound = _rate_bound(k)
        if not integral_abs_le(diff, Fraction(0), Fraction(1), bound):
            info = integral_abs_info(diff, Fraction(0), Fraction(1))
            raise RateViolation(k, info.value, bound)
    return L1Code(prefix)


def bvcode_new(prefix: Sequence[Poly], v: Rat, provenance: dict | None = None) -> BVCode:
    """Validate rate and per-level variation bounds exactly."""
    v = Fraction(v)
    if v < 0:
        raise ValueError("v must be >= 0")
    code = l1code_new(prefix)
    for k, p in enumerate(code.prefix):
        d = p.derivative()
        if not integral_abs_le(d, Fraction(0), Fraction(1), v):
            info = integral_abs_info(d, Fraction(0), Fraction(1))
            raise VariationViolation(k, info.value, v)
    return BVCode(code, v, provenance)


def bvcode_from_poly(p: Poly, depth: int = DEFAULT_DEPTH) -> BVCode:
    """Constant-sequence code of a single polynomial, v = its exact variation.

    (For irrational critical points v is the canonical upper enclosure,
    within 2^-40 of the true variation.)
    """
    prefix = (p,) * (depth + 1)
    return bvcode_new(prefix, poly_variation_upper(p))


def bvcode_linear_comb(a: Rat, f: BVCode, b: Rat, g: BVCode) -> BVCode:
    """a*f + b*g with the minimal index shift keeping the Cauchy rate.

    Entry k is a*p_{k+s} + b*q_{k+s} where s is minimal with
    (|a|+|b|) * 2^-(k+s) <= 2^-k; the new bound is |a| v_f + |b| v_g.
    """
    a, b = Fraction(a), Fraction(b)
    weight = abs(a) + abs(b)
    s = 0 if weight <= 1 else ceil_log2(weight)
    depth = min(f.depth, g.depth) - s
    if depth < 0:
        raise DepthExhausted(
            f"shift {s} exceeds available depth {min(f.depth, g.depth)}"
        )
    prefix = tuple(
        f.prefix[k + s].scale(a) + g.prefix[k + s].scale(b) for k in range(depth + 1)
    )
    return bvcode_new(prefix, abs(a) * f.v + abs(b) * g.v)


def check_reindex_witness(fs: Sequence[BVCode]) -> None:
    """Exact pairwise witness that (f_n) is plausibly 2^-n-convergent.

    If ||f_n - limit||_1 <= 2^-n then ||f_n - f_m||_1 <= 2^-n + 2^-m, so the
    deepest stored polynomials must satisfy it up to the finite-prefix slack
    2^-(K-2) (K = least available depth).  Raises RateViolation on the first
    failing pair.
    """
    K = min(f.depth for f in fs)
    slack = Fraction(4, 1 << K)
    for n in range(len(fs)):
        for m in range(n + 1, len(fs)):
            bound = _rate_bound(n) + _rate_bound(m) + slack
            diff = fs[n].deepest() - fs[m].deepest()
            if not integral_abs_le(diff, Fraction(0), Fraction(1), bound):
                info = integral_abs_info(diff, Fraction(0), Fraction(1))
                raise RateViolation(min(n, m), info.value, bound)


def bvcode_reindex(
    fs: Sequence[BVCode], v: Rat, check_witness: bool = True
) -> BVCode:
    """Diagonal code of a family converging in L1 at rate 2^-n.

    Picks the minimal index shift s for which the diagonal entries
    q_k = (prefix of f_{k+s} at level k+s) pass the exact rate check; the
    variation bound v must dominate every member's bound.
    """
    fs = list(fs)
    v = Fraction(v)
    if not fs:
        raise ValueError("empty family")
    for n, f in enumerate(fs):
        if f.v > v:
            raise VariationViolation(n, f.v, v)
    if check_witness:
        check_reindex_witness(fs)
    last: RateViolation | None = None
    for s in range(0, max(1, min(len(fs), min(f.depth for f in fs)))):
        depth = -1
        while True:
            k = depth + 1
            if k + s >= len(fs) or k + s > fs[k + s].depth:
                break
            depth = k
        if depth < 0:
            break
        prefix = tuple(fs[k + s].prefix[k + s] for k in range(depth + 1))
        try:
            return bvcode_new(prefix, v)
        except RateViolation as exc:
            last = exc
    if last is not None:
        raise last
    raise DepthExhausted("family too shallow for any diagonal")


def bvcode_norm_l1(f: BVCode, m: int) -> NormInterval:
    """Enclosure of ||f||_1 from level m: ||p_m||_1 +- 2^-(m-1).

    The enclosure additionally absorbs the (usually zero) canonical
    integration slack, so it always contains the coded norm.
    """
    if m > f.depth:
        raise DepthExhausted(f"level {m} > stored depth {f.depth}")
    info = integral_abs_info(f.prefix[m], Fraction(0), Fraction(1))
    pad = Fraction(2, 1 << m)
    lo = info.value - pad
    hi = info.value + info.error_bound + pad
    return NormInterval(max(Fraction(0), lo), hi)


def bvcode_step(
    breaks: Sequence[Rat],
    values: Sequence[Rat],
    eps: Rat,
    m: int,
    depth: int | None = None,
    max_degree: int = 48,
) -> BVCode:
    """Code of the eps-smoothed step function with jumps at interior breaks.

    v is the exact jump-height sum; stored entries are variation-capped
    polynomial fits of the smoothed step.  depth=None stops at the deepest
    level the degree budget allows (up to 7).
    """
    from .mollify import smooth_step_piecewise, project_code_prefix

    breaks = [Fraction(t) for t in breaks]
    values = [Fraction(x) for x in values]
    if len(values) != len(breaks) - 1:
        raise ValueError("need one value per interval")
    if breaks[0] != 0 or breaks[-1] != 1:
        raise ValueError("breaks must start at 0 and end at 1")
    if any(breaks[i] >= breaks[i + 1] for i in range(len(breaks) - 1)):
        raise ValueError("breaks must be strictly increasing")
    eps = Fraction(eps)
    min_gap = min(breaks[i + 1] - breaks[i] for i in range(len(breaks) - 1))
    if not 0 < eps < min_gap / 2:
        raise GapTooSmall(f"eps={eps} >= half of the minimal gap {min_gap}")
    smooth = smooth_step_piecewise(breaks, values, eps, m)
    v = sum(
        (abs(values[i + 1] - values[i]) for i in range(len(values) - 1)),
        Fraction(0),
    )
    adaptive = depth is None
    prefix = project_code_prefix(
        smooth, 7 if adaptive else depth, v, max_degree, adaptive=adaptive
    )
    return bvcode_new(
        prefix,
        v,
        provenance={
            "kind": "step",
            "breaks": breaks,
            "values": values,
            "eps": eps,
            "m": m,
            "depth": len(prefix) - 1,
            "max_degree": max_degree,
        },
    )


def step_function_l1_distance(
    breaks_a: Sequence[Rat], values_a: Sequence[Rat],
    breaks_b: Sequence[Rat], values_b: Sequence[Rat],
) -> Fraction:
    """Exact L1 distance between two step functions on [0,1]."""
    pts = sorted(set(Fraction(t) for t in breaks_a) | set(Fraction(t) for t in breaks_b))
    tot = Fraction(0)
    for i in range(len(pts) - 1):
        mid = (pts[i] + pts[i + 1]) / 2
        va = _step_value(breaks_a, values_a, mid)
        vb = _step_value(breaks_b, values_b, mid)
        tot += abs(va - vb) * (pts[i + 1] - pts[i])
    return tot


def _step_value(breaks, values, x):
    for i in range(len(values)):
        if Fraction(breaks[i]) <= x < Fraction(breaks[i + 1]):
            return Fraction(values[i])
    return Fraction(values[-1])


def bvcode_from_modulus(
    sampler: Callable[[Rat], Rat],
    h: ModulusFn,
    v: Rat,
    depth: int = 4,
    m: int = 2,
    max_degree: int = 48,
) -> BVCode:
    """Code built from dyadic samples of an effectively integrable function.

    Level n samples the function on the grid 2^-h(n), forming a step
    function; consecutive step functions must satisfy the exact rate
    ||f_n - f_{n+1}||_1 < 2^-(n-1) (else the modulus claim is refuted with a
    RateViolation), and each level's jump sum must stay within v.  The
    smoothed per-level codes are then merged into one diagonal code.
    """
    v = Fraction(v)
    levels = []
    grids = []
    for n in range(depth + 1):
        g = h(n)
        breaks = [Fraction(k, 1 << g) for k in range((1 << g) + 1)]
        vals = [sampler(breaks[k]) for k in range(1 << g)]
        jump_sum = sum(
            (abs(vals[k + 1] - vals[k]) for k in range(len(vals) - 1)), Fraction(0)
        )
        if jump_sum > v:
            raise VariationViolation(n, jump_sum, v)
        levels.append((breaks, vals))
        grids.append(g)
    for n in range(depth):
        dist = step_function_l1_distance(*levels[n], *levels[n + 1])
        bound = Fraction(2, 1 << n)
        if dist >= bound:
            raise RateViolation(n, dist, bound)
    codes = []
    for n, (breaks, vals) in enumerate(levels):
        if all(x == vals[0] for x in vals):
            codes.append(bvcode_from_poly(Poly.const(vals[0]), depth=n + 3))
            continue
        eps = Fraction(1, 1 << (grids[n] + 2))
        # level n only needs depth n+1: the fit floor of a 2^h(n)-cell
        # staircase sits near 2^-(h(n)+2), one halving below that target
        codes.append(
            bvcode_step(breaks, vals, eps, m, depth=n + 1, max_degree=max_degree)
        )
    # the step functions converge at rate 2^-(n-1); drop two levels so the
    # diagonal sees a genuine 2^-n family (smoothing slack absorbed too)
    shifted = codes[2:] if len(codes) > 2 else codes
    return bvcode_reindex(shifted, v)
