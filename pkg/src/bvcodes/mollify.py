"""Polynomial smoothing kernels and exact mollification.

The kernel is the polynomial bump c_m (1 - x^2)^m on [-1, 1] (normalized to
unit mass, even, nonnegative, C^{m-1} at the endpoints).  Everything the
rest of the pipeline needs from a mollifier is exactly these properties, and
the polynomial form keeps every convolution, norm and certificate inside
exact rational arithmetic.

Convolution uses the reflection extension of the input: g(x) = g(-x) for
x < 0 and g(x) = g(2 - x) for x > 1.  The smoothed result is an exact
PiecewisePoly; projecting a piecewise result back to a plain polynomial
entry goes through an L2 (shifted-Legendre) fit whose acceptance is judged
only by the exact L1 error, with an optional exact variation cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .codes import BVCode, bvcode_new, bvcode_norm_l1
from .errors import DepthExhausted, GapTooSmall, ProjectionBudgetExceeded
from .piecewise import (
    PiecewisePoly,
    pw_integral_abs,
    pw_integral_abs_le,
    pw_sup_bound,
    pw_variation,
)
from .poly import (
    Poly,
    Rat,
    dyadic_round,
    integral_abs_info,
    legendre_basis,
    poly_variation_upper,
)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


def _bump_poly(m: int) -> tuple[Poly, Rat]:
    """(1-x^2)^m and its exact mass over [-1, 1]."""
    base = Poly.of(1, 0, -1)
    p = Poly.const(1)
    for _ in range(m):
        p = p * base
    return p, p.integral(Fraction(-1), Fraction(1))


@dataclass(frozen=True)
class Bump:
    """Unit-mass even polynomial kernel on [-1, 1]."""

    m: int
    kernel: PiecewisePoly  # single piece on [-1, 1]

    @property
    def poly(self) -> Poly:
        return self.kernel.pieces[0]

    @property
    def normalizer(self) -> Rat:
        """c_m with kernel = c_m (1-x^2)^m."""
        return self.poly.coeffs[0]

    def sup(self) -> Rat:
        """Exact sup: the kernel peaks at 0."""
        return self.poly(Fraction(0))


def bump(m: int) -> Bump:
    """Kernel c_m (1-x^2)^m with c_m = 1 / int_{-1}^{1} (1-x^2)^m, exactly."""
    if m < 1:
        raise ValueError("m must be >= 1")
    raw, mass = _bump_poly(m)
    p = raw.scale(Fraction(1) / mass)
    assert p.integral(Fraction(-1), Fraction(1)) == 1
    return Bump(m=m, kernel=PiecewisePoly.from_poly(p, Fraction(-1), Fraction(1)))


@dataclass(frozen=True)
class ScaledBump:
    """Kernel rescaled to support [-eps, eps]: (1/eps) * bump(x/eps)."""

    bump: Bump
    eps: Rat

    @property
    def poly(self) -> Poly:
        return self.bump.poly.compose_affine(0, Fraction(1) / self.eps).scale(
            Fraction(1) / self.eps
        )

    def sup(self) -> Rat:
        return self.bump.sup() / self.eps

    def sup_derivative_bound(self, tol: Rat = Fraction(1, 1 << 20)) -> Rat:
        """Rational upper bound on sup |kernel'|, within tol."""
        pw = PiecewisePoly.from_poly(self.poly, -self.eps, self.eps)
        return pw_sup_bound(pw.derivative(), tol)


def scaled_bump(m: int, eps: Rat) -> ScaledBump:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    sb = ScaledBump(bump=bump(m), eps=eps)
    assert sb.poly.integral(-eps, eps) == 1
    return sb


def edge_mass_coefficient(m: int) -> Rat:
    """int_0^1 s * kernel(s) ds = c_m / (2(m+1)), exactly.

    The L1 distance of a smoothed unit jump to the sharp jump is
    2 * eps * this coefficient per edge.
    """
    b = bump(m)
    return b.normalizer / (2 * (m + 1))


# ---------------------------------------------------------------------------
# Exact convolution with the reflection extension
# ---------------------------------------------------------------------------

_Bivar = dict  # (i, j) -> Fraction meaning x^i y^j


def _bv_mul(a: _Bivar, b: _Bivar) -> _Bivar:
    out: _Bivar = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, Fraction(0)) + c * d
    return {k: v for k, v in out.items() if v != 0}


def _bv_compose(p: Poly, ax: int, by: int, c0: int) -> _Bivar:
    """p(ax*x + by*y + c0) as a bivariate polynomial."""
    lin: _Bivar = {}
    if ax:
        lin[(1, 0)] = Fraction(ax)
    if by:
        lin[(0, 1)] = Fraction(by)
    if c0:
        lin[(0, 0)] = Fraction(c0)
    res: _Bivar = {}
    for c in reversed(p.coeffs):
        res = _bv_mul(res, lin)
        if c:
            res[(0, 0)] = res.get((0, 0), Fraction(0)) + c
    return res


def _bv_anti_y(a: _Bivar) -> _Bivar:
    return {(i, j + 1): c / (j + 1) for (i, j), c in a.items()}


def _bv_subst_y(a: _Bivar, ylim: Poly) -> Poly:
    """Substitute y = ylim(x); returns a univariate Poly in x.

    Groups terms by y-degree and runs Horner in ylim, so ylim powers are
    never recomputed.
    """
    if not a:
        return Poly.zero()
    max_j = max(j for (_, j) in a)
    rows: list[dict[int, Fraction]] = [dict() for _ in range(max_j + 1)]
    for (i, j), c in a.items():
        rows[j][i] = c
    row_polys = []
    for row in rows:
        if row:
            n = max(row) + 1
            row_polys.append(
                Poly(tuple(row.get(i, Fraction(0)) for i in range(n)))
            )
        else:
            row_polys.append(Poly.zero())
    out = Poly.zero()
    for j in range(max_j, -1, -1):
        out = out * ylim + row_polys[j]
    return out


def mollify_poly(p: Poly, eps: Rat, m: int) -> PiecewisePoly:
    """Exact (p~ * eta_eps) on [0, 1], p~ the reflection extension of p.

    The result has breakpoints among {0, eps, 1-eps, 1}; each piece is the
    exact symbolic integral over the kernel window, split at the points
    where the extension switches branch.
    """
    eps = Fraction(eps)
    sb = scaled_bump(m, eps)
    eta_y: _Bivar = {(0, j): c for j, c in enumerate(sb.poly.coeffs)}
    # branch integrands eta(y) * p(arg), arg = x - y in [0,1] / reflected
    branch = {
        "mid": _bv_anti_y(_bv_mul(eta_y, _bv_compose(p, 1, -1, 0))),   # p(x-y)
        "left": _bv_anti_y(_bv_mul(eta_y, _bv_compose(p, -1, 1, 0))),  # p(y-x)
        "right": _bv_anti_y(_bv_mul(eta_y, _bv_compose(p, -1, 1, 2))),  # p(2-x+y)
    }

    def seg(tag: str, ylo: Poly, yhi: Poly) -> Poly:
        a = branch[tag]
        return _bv_subst_y(a, yhi) - _bv_subst_y(a, ylo)

    cuts = sorted({Fraction(0), Fraction(1)} | {c for c in (eps, 1 - eps) if 0 < c < 1})
    y_top = Poly.const(eps)
    y_bot = Poly.const(-eps)
    y_at_x = Poly.x()            # branch switch where x - y = 0
    y_at_x1 = Poly.of(-1, 1)     # branch switch where x - y = 1
    pieces = []
    for i in range(len(cuts) - 1):
        lo, hi = cuts[i], cuts[i + 1]
        mid = (lo + hi) / 2
        cur = y_bot
        total = Poly.zero()
        if -eps < mid - 1 < eps:  # y < x-1: argument beyond 1, reflected right
            total = total + seg("right", cur, y_at_x1)
            cur = y_at_x1
        if -eps < mid < eps:      # y > x: argument below 0, reflected left
            total = total + seg("mid", cur, y_at_x)
            total = total + seg("left", y_at_x, y_top)
        else:
            total = total + seg("mid", cur, y_top)
        pieces.append(total)
    return PiecewisePoly(tuple(cuts), tuple(pieces))


def smoothing_error(p: Poly, eps: Rat, m: int) -> Rat:
    """Canonical value of ||p^eps - p||_1 (exact in the rational-root case)."""
    pw = mollify_poly(p, eps, m)
    return pw_integral_abs(pw.sub_poly(p))


def smoothing_error_within_2ev(p: Poly, eps: Rat, m: int) -> bool:
    """Decide the certified smoothing inequality ||p^eps - p||_1 <= 2 eps V(p).

    The right side uses the canonical lower value of V(p), so a True verdict
    is sound for the true inequality.
    """
    eps = Fraction(eps)
    v_lo = integral_abs_info(p.derivative(), Fraction(0), Fraction(1)).value
    pw = mollify_poly(p, eps, m)
    return pw_integral_abs_le(pw.sub_poly(p), 2 * eps * v_lo)


# ---------------------------------------------------------------------------
# L2 (shifted Legendre) projection with exact acceptance
# ---------------------------------------------------------------------------


class _LegendreFit:
    """Incremental least-squares fits of a piecewise target on [0, 1].

    Legendre coefficients are exact moments, computed once per degree and
    reused by every escalation step and every level of a leveled code.
    """

    def __init__(self, target: PiecewisePoly):
        if target.domain != (Fraction(0), Fraction(1)):
            raise ValueError("projection targets live on [0,1]")
        self.target = target
        self._coeffs: list[Rat] = []
        self._partial: list[Poly] = [Poly.zero()]
        self._samples: list[tuple[float, float, float]] | None = None

    def _extend(self, degree: int) -> None:
        basis = legendre_basis(degree)
        while len(self._coeffs) <= degree:
            j = len(self._coeffs)
            moment = self.target.mul_poly(basis[j]).integral()
            cj = moment * (2 * j + 1)
            self._coeffs.append(cj)
            self._partial.append(self._partial[-1] + basis[j].scale(cj))

    def fit(self, degree: int) -> Poly:
        self._extend(degree)
        return self._partial[degree + 1]

    def _sample_target(self, samples_per_piece: int = 24) -> list[tuple[float, float, float]]:
        """(x, value, trapezoid weight) triples; values computed exactly so
        high-degree pieces with cancelling monomial coefficients stay honest."""
        if self._samples is None:
            out = []
            bp = self.target.breakpoints
            for i, piece in enumerate(self.target.pieces):
                a, b = bp[i], bp[i + 1]
                h = (b - a) / samples_per_piece
                for s in range(samples_per_piece + 1):
                    x = a + s * h
                    w = (0.5 if s in (0, samples_per_piece) else 1.0) * float(h)
                    out.append((float(x), float(piece(x)), w))
            self._samples = out
        return self._samples

    def float_l1_error(self, degree: int) -> float:
        """Crude float estimate of ||target - fit||_1 used only to pick the
        first degree worth an exact check.

        The fit is evaluated via the Legendre three-term recurrence (the
        monomial form of a high-degree fit cancels catastrophically in
        floats); target values come from cached exact evaluations.
        """
        self._extend(degree)
        try:
            cf = [float(c) for c in self._coeffs[: degree + 1]]

            def eval_fit(x: float) -> float:
                acc = 0.0
                prev, cur = 1.0, 2.0 * x - 1.0
                for j in range(degree + 1):
                    lj = prev if j == 0 else cur if j == 1 else 0.0
                    if j >= 2:
                        lj = ((2 * j - 1) * (2.0 * x - 1.0) * cur - (j - 1) * prev) / j
                        prev, cur = cur, lj
                    acc += cf[j] * lj
                return acc

            return sum(
                w * abs(v - eval_fit(x)) for (x, v, w) in self._sample_target()
            )
        except OverflowError:
            return float("inf")


def _identical_piece(g: PiecewisePoly) -> Poly | None:
    first = g.pieces[0]
    return first if all(p == first for p in g.pieces) else None


def project_to_poly(
    g: PiecewisePoly, target: Rat, max_degree: int = 64
) -> tuple[Poly, Rat]:
    """Least-squares candidate accepted only by its exact L1 error <= target."""
    target = Fraction(target)
    if target < 0:
        raise ValueError("target must be >= 0")
    same = _identical_piece(g)
    if same is not None:
        return same, Fraction(0)
    if target == 0:
        raise ProjectionBudgetExceeded(max_degree, None)
    fit = _LegendreFit(g)
    best: Rat | None = None
    degree = 0
    step = 4
    while degree <= max_degree:
        if target > 0 and fit.float_l1_error(degree) > 1.5 * float(target):
            degree += step
            continue
        q = dyadic_round(fit.fit(degree))
        if target > 0 and pw_integral_abs_le(g.sub_poly(q), target):
            return q, pw_integral_abs(g.sub_poly(q))
        err = pw_integral_abs(g.sub_poly(q))
        best = err if best is None else min(best, err)
        degree += step
    raise ProjectionBudgetExceeded(max_degree, best)


def project_code_prefix(
    g: PiecewisePoly,
    depth: int,
    var_bound: Rat,
    max_degree: int = 48,
    adaptive: bool = False,
    min_depth: int = 2,
) -> tuple[Poly, ...]:
    """Leveled prefix for a piecewise target: level k within 2^-(k+1) in L1.

    Consecutive levels then differ by at most 3/4 * 2^-k, so the Cauchy rate
    holds with margin.  Every entry's exact variation is capped at var_bound
    by shrinking the fit toward its mean (the cap costs at most
    (V_hat - var_bound)/V_hat * ||fit - mean||_1 of extra L1 error, which the
    exact acceptance re-checks).  With adaptive=True the prefix stops at the
    deepest feasible level >= min_depth instead of raising.
    """
    var_bound = Fraction(var_bound)
    same = _identical_piece(g)
    if same is not None and poly_variation_upper(same) <= var_bound:
        return (same,) * (depth + 1)
    fit = _LegendreFit(g)
    mean = g.integral()
    if var_bound == 0:
        q = Poly.const(mean)
        if not pw_integral_abs_le(g.sub_poly(q), Fraction(1, 4)):
            raise ProjectionBudgetExceeded(0, pw_integral_abs(g.sub_poly(q)))
        return (q,) * (depth + 1)

    def capped(degree: int) -> Poly:
        q = dyadic_round(fit.fit(degree))
        vu = poly_variation_upper(q)
        if vu <= var_bound:
            return q
        # the margin keeps the bound intact through the coefficient snap
        for margin_bits in (40, 20, 10):
            lam = var_bound * (1 - Fraction(1, 1 << margin_bits)) / vu
            qc = dyadic_round((q - Poly.const(mean)).scale(lam) + Poly.const(mean))
            if poly_variation_upper(qc) <= var_bound:
                return qc
        raise ProjectionBudgetExceeded(degree, None)

    prefix: list[Poly] = []
    degree = 0
    step = 4
    best: Rat | None = None
    for k in range(depth + 1):
        tau = Fraction(1, 1 << (k + 1))
        accepted = None
        while degree <= max_degree:
            if fit.float_l1_error(degree) > 2.0 * float(tau):
                degree += step
                continue
            q = capped(degree)
            if pw_integral_abs_le(g.sub_poly(q), tau):
                accepted = q
                break
            err = pw_integral_abs(g.sub_poly(q))
            best = err if best is None else min(best, err)
            degree += step
        if accepted is None:
            if adaptive and len(prefix) > min_depth:
                break
            raise ProjectionBudgetExceeded(max_degree, best)
        prefix.append(accepted)
    return tuple(prefix)


# ---------------------------------------------------------------------------
# Smoothed steps and indicators
# ---------------------------------------------------------------------------


def _smoothstep_antiderivative(m: int) -> Poly:
    """S with S(u) = int_{-1}^{u} kernel: S(-1) = 0, S(1) = 1."""
    b = bump(m)
    anti = b.poly.antiderivative()
    return anti - Poly.const(anti(Fraction(-1)))


def smooth_step_piecewise(
    breaks: Sequence[Rat], values: Sequence[Rat], eps: Rat, m: int
) -> PiecewisePoly:
    """Step function smoothed by the eps-kernel at every interior breakpoint.

    Exact piecewise polynomial; each jump of height h at t contributes
    h * S((x - t)/eps) with the unit smoothstep S.
    """
    eps = Fraction(eps)
    breaks = [Fraction(t) for t in breaks]
    values = [Fraction(x) for x in values]
    S = _smoothstep_antiderivative(m)
    interior = breaks[1:-1]
    cuts = sorted(
        {Fraction(0), Fraction(1)}
        | {t - eps for t in interior}
        | {t + eps for t in interior}
    )
    if cuts[0] < 0 or cuts[-1] > 1:
        raise GapTooSmall("smoothing radius crosses the domain boundary")
    pieces = []
    for i in range(len(cuts) - 1):
        mid = (cuts[i] + cuts[i + 1]) / 2
        total = Poly.const(values[0])
        for j, t in enumerate(interior):
            h = values[j + 1] - values[j]
            if mid <= t - eps:
                continue
            if mid >= t + eps:
                total = total + Poly.const(h)
            else:
                total = total + S.compose_affine(-t / eps, Fraction(1) / eps).scale(h)
        pieces.append(total)
    return PiecewisePoly(tuple(cuts), tuple(pieces))


@dataclass(frozen=True)
class IndicatorApproximation:
    """Smoothed interval indicator: code, exact shape data, exact distance."""

    code: BVCode
    piecewise: PiecewisePoly
    variation: Rat
    distance_to_indicator: Rat


def smooth_indicator(
    a: Rat,
    b: Rat,
    eps: Rat,
    m: int = 1,
    depth: int | None = None,
    max_degree: int = 48,
) -> IndicatorApproximation:
    """Smoothed chi_[a,b] with exact variation 2 and exact L1 distance.

    The distance to the sharp indicator is 2 * eps * c_m/(m+1) in closed
    form; it is recomputed piecewise-exactly and both must agree.  With
    depth=None the code prefix is as deep as the degree budget allows
    (up to 7); an explicit depth raises ProjectionBudgetExceeded when
    infeasible.
    """
    a, b, eps = Fraction(a), Fraction(b), Fraction(eps)
    if not 0 < a < b < 1:
        raise ValueError("need 0 < a < b < 1")
    if not 0 < eps < min(a, 1 - b, (b - a) / 2):
        raise GapTooSmall(
            f"eps={eps} must be < min(a, 1-b, (b-a)/2) = {min(a, 1 - b, (b - a) / 2)}"
        )
    pw = smooth_step_piecewise((Fraction(0), a, b, Fraction(1)), (0, 1, 0), eps, m)
    variation = pw_variation(pw)
    chi = PiecewisePoly(
        (Fraction(0), a, b, Fraction(1)),
        (Poly.zero(), Poly.const(1), Poly.zero()),
    )
    distance = pw_integral_abs(pw - chi)
    closed_form = 4 * eps * edge_mass_coefficient(m)
    if distance != closed_form:
        raise AssertionError(
            f"piecewise distance {distance} disagrees with closed form {closed_form}"
        )
    adaptive = depth is None
    prefix = project_code_prefix(
        pw, 7 if adaptive else depth, Fraction(2), max_degree, adaptive=adaptive
    )
    code = bvcode_new(
        prefix,
        Fraction(2),
        provenance={
            "kind": "indicator",
            "a": a,
            "b": b,
            "eps": eps,
            "m": m,
            "depth": len(prefix) - 1,
            "max_degree": max_degree,
        },
    )
    return IndicatorApproximation(
        code=code, piecewise=pw, variation=variation, distance_to_indicator=distance
    )


# ---------------------------------------------------------------------------
# Mollification of codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MollifyCertificate:
    """Exactly re-checkable record of one mollification.

    `exact_error` is ||p_K^eps - p_K||_1 at the deepest level used and
    `bound` is the certified 2*eps*v; `new_v` bounds every stored output
    entry's variation, while `mollified_variation` is the canonical
    int |(f^eps)'| of the un-projected convolution.
    """

    eps: Rat
    v: Rat
    bound: Rat
    exact_error: Rat
    bound_holds: bool
    new_v: Rat
    mollified_variation: Rat
    projection_error: Rat
    kernel: str


def mollify_code(
    f: BVCode,
    eps: Rat,
    m: int = 2,
    k_out: int | None = None,
    max_degree: int = 48,
) -> tuple[BVCode, MollifyCertificate]:
    """Mollify a code: exact convolution level-wise, then project to entries.

    Convolution is 2-Lipschitz in L1 under the reflection extension, so the
    output entry at level k uses the input entry at level k+2 and a
    projection budget of 2^-(k+3); the output rate is then re-validated
    exactly like any other code.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    shift = 2
    if f.depth < shift:
        raise DepthExhausted("input depth < 2")
    limit = min(f.depth - shift, 8) if k_out is None else k_out
    if limit < 0:
        raise DepthExhausted("requested output depth is negative")
    if k_out is not None and k_out > f.depth - shift:
        raise DepthExhausted(
            f"k_out={k_out} needs input depth >= {k_out + shift}, have {f.depth}"
        )
    conv_cache: dict[tuple, PiecewisePoly] = {}

    def conv(p: Poly) -> PiecewisePoly:
        if p.coeffs not in conv_cache:
            conv_cache[p.coeffs] = mollify_poly(p, eps, m)
        return conv_cache[p.coeffs]

    proj_cache: dict[tuple[tuple, Rat], tuple[Poly, Rat]] = {}
    prefix: list[Poly] = []
    proj_err = Fraction(0)
    adaptive = k_out is None
    for k in range(limit + 1):
        src = f.prefix[min(k + shift, f.depth)]
        tau = Fraction(1, 1 << (k + 3))
        key = (src.coeffs, tau)
        if key not in proj_cache:
            try:
                proj_cache[key] = project_to_poly(conv(src), tau, max_degree)
            except ProjectionBudgetExceeded:
                if adaptive and prefix:
                    break
                raise
        q, err = proj_cache[key]
        prefix.append(q)
        proj_err = max(proj_err, err)
    new_v = max(poly_variation_upper(q) for q in prefix)
    out = bvcode_new(prefix, new_v)
    deep_src = f.prefix[f.depth]
    deep_pw = conv(deep_src)
    exact_error = pw_integral_abs(deep_pw.sub_poly(deep_src))
    bound = 2 * eps * f.v
    bound_holds = pw_integral_abs_le(deep_pw.sub_poly(deep_src), bound)
    cert = MollifyCertificate(
        eps=eps,
        v=f.v,
        bound=bound,
        exact_error=exact_error,
        bound_holds=bound_holds,
        new_v=new_v,
        mollified_variation=pw_variation(deep_pw),
        projection_error=proj_err,
        kernel=f"polynomial_bump(m={m})",
    )
    return out, cert


def mollify_sup_bounds(
    f: BVCode, eps: Rat, m: int = 1, tol: Rat = Fraction(1, 1 << 20)
) -> tuple[Rat, Rat]:
    """A-priori sup bounds (||f^eps||_inf, ||(f^eps)'||_inf) from the norm.

    These are the coarse bounds u * sup(eta_eps) and u * sup(eta_eps') with
    u = ||p_K||_1 for the deepest stored entry (whose mollification the
    bounds describe).  Selection certificates use exact per-instance sup
    enclosures instead (see selection module), since the coarse product
    form ignores the reflection extension.
    """
    from .poly import integral_abs_upper

    sb = scaled_bump(m, Fraction(eps))
    u = integral_abs_upper(f.deepest(), Fraction(0), Fraction(1))
    return u * sb.sup(), u * sb.sup_derivative_bound(tol)
