"""Exact univariate polynomial algebra over Q, interpreted on [0,1].

A polynomial is a tuple of Fractions, lowest degree first, with trailing
zeros stripped; the zero polynomial is the empty tuple.  Everything here is
exact: evaluation, calculus, root isolation (Descartes-rule bisection on the
square-free part, run in cleared integer arithmetic), and integrals of
absolute values.

On integrals of absolute values: int_a^b |p| is an algebraic number and is
irrational whenever p changes sign at an irrational point (example:
int_0^1 |x^2 - 1/2| = (2*sqrt(2)-1)/6).  The value returned by
`integral_abs` is therefore computed from a canonical partition of [a,b] at
sign-change points, with irrational points replaced by canonical dyadic
enclosures of width <= 2^-40; it is exact (and flagged as such) whenever
every interior sign change is rational, and otherwise is a lower bound
within a reported error bound of the truth.  Certificate checks never
compare rounded values: `integral_abs_le` decides `int|p| <= bound` exactly
by adaptive refinement, which terminates because an irrational integral
cannot equal a rational bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PrecisionExhausted, ZeroPolynomial
from .rationals import simplest_in_interval

Rat = Fraction

# Canonical enclosure width for sign-change points (2^-CANONICAL_BITS).
CANONICAL_BITS = 40
# Absolute cap for adaptive refinement in exact comparisons.
_REFINE_CAP_BITS = 4096
# Denominator cap for the simplest-rational root probe.
_PROBE_DENOM_CAP = 1 << 64


def _strip(coeffs: Iterable[Rat]) -> tuple[Rat, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    coeffs: tuple[Rat, ...]

    @staticmethod
    def of(*coeffs) -> Poly:
        return Poly(_strip(Fraction(c) for c in coeffs))

    @staticmethod
    def zero() -> Poly:
        return Poly(())

    @staticmethod
    def const(c) -> Poly:
        return Poly(_strip((Fraction(c),)))

    @staticmethod
    def x() -> Poly:
        return Poly((Fraction(0), Fraction(1)))

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x: Rat) -> Rat:
        r = Fraction(0)
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(
            tuple(
                (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                for i in range(n)
            )
        )

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(tuple(out))

    def scale(self, s) -> Poly:
        s = Fraction(s)
        return Poly(tuple(c * s for c in self.coeffs))

    def derivative(self) -> Poly:
        return Poly(tuple(self.coeffs[i] * i for i in range(1, len(self.coeffs))))

    def antiderivative(self) -> Poly:
        """Antiderivative with constant term 0."""
        return Poly(
            (Fraction(0),)
            + tuple(self.coeffs[i] / (i + 1) for i in range(len(self.coeffs)))
        )

    def integral(self, a: Rat, b: Rat) -> Rat:
        """Exact plain integral over [a, b]."""
        anti = self.antiderivative()
        return anti(b) - anti(a)

    def compose_affine(self, alpha, beta) -> Poly:
        """p(alpha + beta * x), exactly."""
        alpha, beta = Fraction(alpha), Fraction(beta)
        lin = Poly((alpha, beta))
        res = Poly(())
        for c in reversed(self.coeffs):
            res = res * lin + Poly.const(c)
        return res


def poly_eval(p: Poly, x: Rat) -> Rat:
    """Exact value p(x)."""
    return p(Fraction(x))


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_antiderivative(p: Poly) -> Poly:
    return p.antiderivative()


# ---------------------------------------------------------------------------
# Square-free part (integer arithmetic)
# ---------------------------------------------------------------------------


def _int_clear(p: Poly) -> list[int]:
    """Primitive integer coefficient list proportional to p."""
    L = 1
    for c in p.coeffs:
        L = L * c.denominator // math.gcd(L, c.denominator)
    ip = [int(c * L) for c in p.coeffs]
    g = 0
    for c in ip:
        g = math.gcd(g, c)
    if g > 1:
        ip = [c // g for c in ip]
    return ip


def _int_primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, x)
    return [x // g for x in c] if g > 1 else list(c)


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (both int lists, low-first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        d = len(r) - 1 - db
        lr = r[-1]
        r = [x * lb for x in r]
        for i in range(len(b)):
            r[d + i] -= lr * b[i]
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_gcd_poly(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd via primitive pseudo-remainder sequence."""
    a, b = _int_primitive(a), _int_primitive(b)
    while b:
        r = _int_prem(a, b)
        a, b = b, _int_primitive(r) if r else []
    return a


def _sqfree_mod_p(c: list[int], prime: int) -> bool:
    """True if reduction mod `prime` certifies p square-free over Q."""
    cp = [x % prime for x in c]
    while cp and cp[-1] == 0:
        cp.pop()
    if len(cp) != len(c):  # leading coefficient vanished: bad reduction
        return False
    dp = [(cp[i] * i) % prime for i in range(1, len(cp))]
    while dp and dp[-1] == 0:
        dp.pop()
    if not dp:
        return False
    # Euclid over GF(prime)
    a, b = cp, dp
    while b:
        # remainder of a by b
        r = list(a)
        inv = pow(b[-1], prime - 2, prime)
        while len(r) >= len(b):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            q = (r[-1] * inv) % prime
            d = len(r) - len(b)
            for i in range(len(b)):
                r[d + i] = (r[d + i] - q * b[i]) % prime
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return len(a) == 1


def square_free_part(p: Poly) -> Poly:
    """p / gcd(p, p'): same real roots, all simple."""
    if p.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree <= 1:
        return p
    c = _int_clear(p)
    for prime in (2147483647, 2305843009213693951):
        if _sqfree_mod_p(c, prime):
            return p
    d = [c[i] * i for i in range(1, len(c))]
    g = _int_gcd_poly(c, d)
    if len(g) <= 1:
        return p
    # exact division p / g over Q
    gq = Poly(tuple(Fraction(x) for x in g))
    q, r = _poly_divmod(p, gq)
    assert r.is_zero()
    return q


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    r = list(a.coeffs)
    q = [Fraction(0)] * max(1, len(a.coeffs) - len(b.coeffs) + 1)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b.coeffs):
            break
        d = len(r) - len(b.coeffs)
        c = r[-1] / b.coeffs[-1]
        q[d] += c
        for i in range(len(b.coeffs)):
            r[d + i] -= c * b.coeffs[i]
        r[-1] = Fraction(0)
    return Poly(tuple(q)), Poly(tuple(r))


def is_square_free(p: Poly) -> bool:
    return p.degree <= 1 or square_free_part(p).degree == p.degree


# ---------------------------------------------------------------------------
# Root isolation: Descartes-rule (VCA) bisection in integer arithmetic
# ---------------------------------------------------------------------------


def _sign_variations(c: Sequence[int]) -> int:
    v, prev = 0, 0
    for x in c:
        if x == 0:
            continue
        s = 1 if x > 0 else -1
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _taylor_shift_1(c: list[int]) -> list[int]:
    """p(x+1) for integer coefficients, in place Pascal style."""
    c = list(c)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _zero_one_bound(c: list[int]) -> int:
    """Descartes bound on the number of roots in the open interval (0,1)."""
    return _sign_variations(_taylor_shift_1(list(reversed(c))))


def _divide_out_root_at_1(c: list[int]) -> list[int]:
    """c / (x - 1), exact when c(1) == 0 (synthetic division)."""
    out = [0] * (len(c) - 1)
    acc = 0
    for i in range(len(c) - 1, 0, -1):
        acc += c[i]
        out[i - 1] = acc
    return out


def _isolate_01(c: list[int]) -> list[tuple]:
    """Isolate roots of a square-free integer polynomial in the open (0,1).

    Returns frames ('box', k, d, p_local) meaning (k/2^d, (k+1)/2^d) holds
    exactly one root of the localized polynomial p_local (the input mapped
    onto the frame, with previously found dyadic roots divided out -- so
    p_local never vanishes at its own frame endpoints 0 and 1), or
    ('exact', k, d) meaning k/2^d is a root.
    """
    out: list[tuple] = []
    stack = [(list(c), 0, 0)]
    while stack:
        p, k, d = stack.pop()
        v = _zero_one_bound(p)
        if v == 0:
            continue
        if v == 1:
            out.append(("box", k, d, p))
            continue
        if d > _REFINE_CAP_BITS:
            raise PrecisionExhausted("root isolation stalled (multiple root?)")
        n = len(p)
        pl = [p[i] << (n - 1 - i) for i in range(n)]  # p(x/2) * 2^(n-1)
        pr = _taylor_shift_1(pl)  # p((x+1)/2) * 2^(n-1)
        if pr[0] == 0:  # exact root at the midpoint
            out.append(("exact", 2 * k + 1, d + 1))
            pr = pr[1:]
            pl = _divide_out_root_at_1(pl)
        stack.append((pl, 2 * k, d + 1))
        stack.append((pr, 2 * k + 1, d + 1))
    return out


def _int_sign_at(c: list[int], x: Rat) -> int:
    """Sign of the integer polynomial at the rational point x."""
    num, den = x.numerator, x.denominator
    n = len(c)
    r = 0
    pw_num = 1
    pw_den = [1] * n
    for i in range(n - 2, -1, -1):
        pw_den[i] = pw_den[i + 1] * den
    for i, coef in enumerate(c):
        if coef:
            r += coef * pw_num * pw_den[i]
        pw_num *= num
    return (r > 0) - (r < 0)


@dataclass(frozen=True)
class RootBoxes:
    """Disjoint intervals each containing exactly one real root.

    An interval with lo == hi is an exactly-known rational root.
    """

    intervals: tuple[tuple[Rat, Rat], ...]
    multiplicity_free: bool


def _root_bound_pow2(c: list[int]) -> int:
    """Power-of-two B with every real root strictly inside (-B, B) (Cauchy)."""
    lc = abs(c[-1])
    m = max(abs(x) for x in c[:-1]) if len(c) > 1 else 0
    bound = 1 + Fraction(m, lc)
    B = 1
    while B <= bound:
        B *= 2
    return B


class _RootMark:
    """One real root of a square-free polynomial: exact value or enclosure.

    Inexact marks carry the frame-localized polynomial (which, unlike the
    global one, cannot vanish at the enclosure's current endpoints -- a
    neighboring exact root may sit exactly on a frame boundary) plus the
    local coordinates of the current enclosure inside that frame.
    """

    __slots__ = ("lo", "hi", "exact", "local", "llo", "lhi", "sl", "frame")

    def __init__(self, lo: Rat, hi: Rat, exact: bool, local=None, frame=None):
        self.lo, self.hi, self.exact = lo, hi, exact
        self.local = local  # localized int coefficients
        self.frame = frame  # (global_lo, global_hi) of the emitted frame
        self.llo, self.lhi = Fraction(0), Fraction(1)
        self.sl = None  # cached sign at llo

    def copy(self) -> "_RootMark":
        m = _RootMark(self.lo, self.hi, self.exact, self.local, self.frame)
        m.llo, m.lhi, m.sl = self.llo, self.lhi, self.sl
        return m


def _refine_mark(mark: _RootMark, c: list[int], width: Rat) -> None:
    """Shrink a root enclosure to the requested width by sign bisection.

    Bisection runs in the mark's local frame (endpoint signs are nonzero
    there); the simplest rational of the global enclosure is probed against
    the global polynomial each step, so moderate-height rational roots
    become exact.
    """
    if mark.exact:
        return
    glo0, ghi0 = mark.frame
    span = ghi0 - glo0
    if mark.sl is None:
        mark.sl = _int_sign_at(mark.local, mark.llo)
    while mark.hi - mark.lo > width:
        probe = simplest_in_interval(mark.lo, mark.hi)
        if probe.denominator <= _PROBE_DENOM_CAP and _int_sign_at(c, probe) == 0:
            mark.lo = mark.hi = probe
            mark.exact = True
            return
        mid = (mark.llo + mark.lhi) / 2
        sm = _int_sign_at(mark.local, mid)
        if sm == 0:
            mark.lo = mark.hi = glo0 + span * mid
            mark.exact = True
            return
        if sm != mark.sl:
            mark.lhi = mid
        else:
            mark.llo, mark.sl = mid, sm
        mark.lo = glo0 + span * mark.llo
        mark.hi = glo0 + span * mark.lhi


# cache: coeffs tuple -> (int-cleared square-free coeffs, list of canonical _RootMark)
_PARTITION_CACHE: dict[tuple, tuple[list[int], list[_RootMark]]] = {}


def _canonical_marks(p: Poly) -> tuple[list[int], list[_RootMark]]:
    """All real roots of the square-free part, canonically enclosed.

    The enclosures depend only on p (isolation runs over a power-of-two
    Cauchy bound, refinement always bisects), never on a query interval, so
    values assembled from them are additive across subinterval splits.
    """
    key = p.coeffs
    hit = _PARTITION_CACHE.get(key)
    if hit is not None:
        return hit
    sf = square_free_part(p)
    c = _int_clear(sf)
    if len(c) <= 1:
        _PARTITION_CACHE[key] = (c, [])
        return _PARTITION_CACHE[key]
    B = _root_bound_pow2(c)
    # map (-B, B) onto (0,1): q(t) = p(-B + 2B t)
    q = sf.compose_affine(Fraction(-B), Fraction(2 * B))
    marks: list[_RootMark] = []
    width = Fraction(1, 1 << CANONICAL_BITS)
    for frame in _isolate_01(_int_clear(q)):
        if frame[0] == "exact":
            _, k, d = frame
            r = Fraction(-B) + 2 * B * Fraction(k, 1 << d)
            marks.append(_RootMark(r, r, True))
        else:
            _, k, d, local = frame
            lo = Fraction(-B) + 2 * B * Fraction(k, 1 << d)
            hi = Fraction(-B) + 2 * B * Fraction(k + 1, 1 << d)
            m = _RootMark(lo, hi, False, local=local, frame=(lo, hi))
            _refine_mark(m, c, width)
            marks.append(m)
    marks.sort(key=lambda m: m.lo)
    _PARTITION_CACHE[key] = (c, marks)
    return _PARTITION_CACHE[key]


def _mark_sign_at(m: _RootMark, c: list[int], x: Rat) -> int:
    """Sign of the square-free part at x, via the mark's localized
    polynomial when available (nonzero at the mark's own frame ends)."""
    if m.local is not None:
        glo0, ghi0 = m.frame
        return _int_sign_at(m.local, (x - glo0) / (ghi0 - glo0))
    return _int_sign_at(c, x)


def isolate_roots(p: Poly, a: Rat, b: Rat, width: Rat | None = None) -> RootBoxes:
    """Isolating intervals for all real roots of p in [a, b].

    Intervals are pairwise disjoint and each contains exactly one root of
    the square-free part; pass `width` to shrink them on demand.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    c, marks = _canonical_marks(p)
    out = []
    for m in marks:
        mm = m.copy()
        if width is not None:
            _refine_mark(mm, c, Fraction(width))
        if mm.hi < a or mm.lo > b:
            continue
        # clip boxes straddling a query endpoint; the single simple root has
        # opposite signs at the box ends, so one sign test locates its side
        if not mm.exact and mm.lo < a:
            sa = _mark_sign_at(mm, c, a)
            if sa == 0:
                mm.lo = mm.hi = a
                mm.exact = True
            elif sa == _mark_sign_at(mm, c, mm.hi):
                continue  # root lies left of a
            else:
                mm.lo = a
        if not mm.exact and mm.hi > b:
            sb = _mark_sign_at(mm, c, b)
            if sb == 0:
                mm.lo = mm.hi = b
                mm.exact = True
            elif sb == _mark_sign_at(mm, c, mm.lo):
                continue  # root lies right of b
            else:
                mm.hi = b
        out.append((mm.lo, mm.hi))
    return RootBoxes(intervals=tuple(out), multiplicity_free=is_square_free(p))


# ---------------------------------------------------------------------------
# Exact integrals of absolute values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbsIntegral:
    """Result of integrating |p|: canonical value, error bound, exactness."""

    value: Rat
    error_bound: Rat
    exact: bool

    @property
    def upper(self) -> Rat:
        return self.value + self.error_bound


def _abs_bound_on(p: Poly, lo: Rat, hi: Rat) -> Rat:
    """Certified bound for max |p| on [lo, hi].

    Narrow intervals use the Taylor expansion at the center (tight even for
    high-degree polynomials whose monomial coefficients nearly cancel);
    wide intervals fall back to interval-arithmetic Horner.
    """
    if p.is_zero():
        return Fraction(0)
    w = hi - lo
    if w <= Fraction(1, 1 << 12):
        center = (lo + hi) / 2
        shifted = p.compose_affine(center, Fraction(1))
        half = w / 2
        tot = Fraction(0)
        power = Fraction(1)
        for a in shifted.coeffs:
            tot += abs(a) * power
            power *= half
        return tot
    mn = mx = Fraction(0)
    first = True
    for c in reversed(p.coeffs):
        if first:
            mn = mx = c
            first = False
            continue
        cands = (mn * lo, mn * hi, mx * lo, mx * hi)
        mn, mx = min(cands) + c, max(cands) + c
    return max(abs(mn), abs(mx))


def _assemble(p: Poly, a: Rat, b: Rat, marks: list[_RootMark]) -> tuple[Rat, Rat, bool]:
    """Canonical partition sum for int_a^b |p| given root marks."""
    anti = p.antiderivative()
    pts = [a, b]
    err = Fraction(0)
    exact = True
    for m in marks:
        if m.hi <= a or m.lo >= b:
            continue
        if m.exact:
            if a < m.lo < b:
                pts.append(m.lo)
            continue
        rep = (m.lo + m.hi) / 2
        if a < rep < b:
            pts.append(rep)
        lo, hi = max(m.lo, a), min(m.hi, b)
        if lo < hi:
            # within the box the sign may differ from the piece majority,
            # costing at most twice the local mass
            err += 2 * (hi - lo) * _abs_bound_on(p, lo, hi)
            exact = False
    pts = sorted(set(pts))
    val = Fraction(0)
    prev = anti(pts[0])
    for t in pts[1:]:
        cur = anti(t)
        val += abs(cur - prev)
        prev = cur
    return val, err, exact


def integral_abs_info(p: Poly, a: Rat, b: Rat) -> AbsIntegral:
    """Canonical value of int_a^b |p| with its error bound and exactness flag."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("integral_abs requires a <= b")
    if p.is_zero() or a == b:
        return AbsIntegral(Fraction(0), Fraction(0), True)
    _, marks = _canonical_marks(p)
    val, err, exact = _assemble(p, a, b, marks)
    return AbsIntegral(val, err, exact)


def integral_abs(p: Poly, a: Rat, b: Rat) -> Rat:
    """int_a^b |p|: exact when all interior sign changes are rational,
    otherwise the canonical lower value within 2^-40-scale error."""
    return integral_abs_info(p, a, b).value


def integral_abs_upper(p: Poly, a: Rat, b: Rat) -> Rat:
    """A certified rational upper bound on int_a^b |p|."""
    return integral_abs_info(p, a, b).upper


def integral_abs_le(p: Poly, a: Rat, b: Rat, bound: Rat) -> bool:
    """Decide int_a^b |p| <= bound, exactly.

    Refines root enclosures adaptively; terminates unless the integral is an
    irrational number that our probe cannot separate from `bound` within the
    refinement cap (then PrecisionExhausted).
    """
    a, b, bound = Fraction(a), Fraction(b), Fraction(bound)
    if p.is_zero() or a >= b:
        return 0 <= bound
    c, marks = _canonical_marks(p)
    local = [m.copy() for m in marks]
    bits = CANONICAL_BITS
    while True:
        val, err, exact = _assemble(p, a, b, local)
        if exact:
            return val <= bound
        if val + err <= bound:
            return True
        if val > bound:
            return False
        bits *= 2
        if bits > _REFINE_CAP_BITS:
            raise PrecisionExhausted(
                f"cannot separate int|p| from {bound} within 2^-{_REFINE_CAP_BITS}"
            )
        width = Fraction(1, 1 << bits)
        for m in local:
            if not (m.hi <= a or m.lo >= b):
                _refine_mark(m, c, width)


def poly_variation(p: Poly) -> Rat:
    """V(p) = int_0^1 |p'|, the exact variation of p on [0,1].

    Equals the supremum over partitions of sums |p(t_i) - p(t_{i+1})|; for
    polynomials the supremum is attained at the critical points.
    """
    return integral_abs(p.derivative(), Fraction(0), Fraction(1))


def poly_variation_upper(p: Poly) -> Rat:
    return integral_abs_upper(p.derivative(), Fraction(0), Fraction(1))


def poly_variation_le(p: Poly, bound: Rat) -> bool:
    """Decide V(p) <= bound exactly."""
    return integral_abs_le(p.derivative(), Fraction(0), Fraction(1), bound)


def dyadic_round(p: Poly, bits: int = 64) -> Poly:
    """Round each coefficient to the nearest multiple of 2^-bits.

    Candidate polynomials from least-squares fits carry coefficients with
    huge denominators; snapping them keeps every later exact computation
    cheap.  The sup-norm perturbation is at most (degree+1) * 2^-(bits+1),
    far below any acceptance target, and acceptance is always re-decided
    exactly on the snapped polynomial.
    """
    scale = 1 << bits
    out = []
    for c in p.coeffs:
        num = c.numerator * scale * 2 + c.denominator
        out.append(Fraction(num // (2 * c.denominator), scale))
    return Poly(tuple(out))


# ---------------------------------------------------------------------------
# Shifted Legendre basis (orthogonal on [0,1]), used for L2 projections
# ---------------------------------------------------------------------------

_LEGENDRE: list[Poly] = []


def legendre_basis(n: int) -> list[Poly]:
    """Shifted Legendre polynomials L_0..L_n on [0,1]; int L_i L_j = d_ij/(2i+1)."""
    while len(_LEGENDRE) <= n:
        k = len(_LEGENDRE)
        if k == 0:
            _LEGENDRE.append(Poly.const(1))
        elif k == 1:
            _LEGENDRE.append(Poly.of(-1, 2))
        else:
            m = k - 1
            t = Poly.of(-1, 2) * _LEGENDRE[m]
            nxt = (t.scale(2 * m + 1) - _LEGENDRE[m - 1].scale(m)).scale(
                Fraction(1, m + 1)
            )
            _LEGENDRE.append(nxt)
    return _LEGENDRE[: n + 1]
