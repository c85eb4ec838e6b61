"""Selection engines with exactly re-checkable certificates.

Three layers, each total on finite data:

* scalar limit-point selection on [0,1] by majority-count bisection
  (`bw_select`), and its product-space version on truncated [0,1]^N with
  the weighted metric sum_i 2^-i |x_i - y_i| (`bw_product_select`);
* a diagonal selector for doubly indexed, uniformly bounded,
  equicontinuous families (`aa_diagonal_select`), whose output satisfies
  the uniform contract
      for all k, j <= k, n, n' >= k:  sup|f_{g(n),j} - f_{g(n'),j}| < 2^-k,
  verified through exact polynomial sup enclosures;
* the bounded-variation selection pipeline (`helly_select`): smooth every
  input at dyadic scales, select through the product-space engine, thin to
  the contract, and certify the L1 rate
      ||f_g(n) - f_g(n')||_1 <= 2^-k + 2^(-k+2) v + 2^(-K+1)
  for positions n, n' >= k at stored depth K, returning a limit code by
  diagonal re-indexing.

The infinite-data limit-point principle is not computable ("which half has
infinitely many points" is undecidable), so these selectors work by
majority counts with a left tie-break and report exhaustion honestly; every
certificate line is an exact rational inequality an independent checker can
recompute.  `helly_select` is, by construction, exactly the composition
`helly_postprocess . bw_product_select . hst_to_bw_instance`, which makes
the two instance-wise reduction directions executable and bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .codes import (
    BVCode,
    DEFAULT_DEPTH,
    ModulusFn,
    bvcode_from_poly,
    bvcode_norm_l1,
    bvcode_reindex,
)
from .errors import DimensionTooSmall, GridTooCoarse, HypothesisViolation
from .mollify import mollify_poly, scaled_bump
from .piecewise import PiecewisePoly, pw_sup_bound
from .poly import Poly, Rat, integral_abs_info, integral_abs_le
from .rationals import ceil_log2


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertLevel:
    """One exact assertion |x_{g(n)} - candidate| <= bound (metric as per cert)."""

    n: int
    index: int
    value: Rat
    bound: Rat

    @property
    def holds(self) -> bool:
        return self.value <= self.bound


@dataclass(frozen=True)
class SelectionCertificate:
    """Finite witness of a convergent-subsequence selection.

    g is strictly increasing; each level re-checks as an exact rational
    inequality.  For product selections the distances are in the truncated
    metric and `truncation_slack` bounds the ignored tail.
    """

    g: tuple[int, ...]
    candidate: Rat | tuple[Rat, ...]
    levels: tuple[CertLevel, ...]
    exhausted_at: int | None
    truncation_slack: Rat = Fraction(0)

    def verify(self, points) -> bool:
        """Independently recompute every level from the raw data."""
        if list(self.g) != sorted(set(self.g)):
            return False
        for lv in self.levels:
            x = points[lv.index]
            if isinstance(self.candidate, tuple):
                d = truncated_metric(tuple(x.coords), self.candidate)
            else:
                d = abs(Fraction(x) - self.candidate)
            if d != lv.value or not lv.holds:
                return False
        return True


@dataclass(frozen=True)
class FinSeq:
    """Finite sequence of rationals in [0,1]."""

    points: tuple[Rat, ...]

    def __post_init__(self):
        pts = tuple(Fraction(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if any(not 0 <= x <= 1 for x in pts):
            raise ValueError("points must lie in [0,1]")

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ProductPoint:
    """Point of the truncated product space [0,1]^D."""

    coords: tuple[Rat, ...]

    def __post_init__(self):
        cs = tuple(Fraction(x) for x in self.coords)
        object.__setattr__(self, "coords", cs)
        if any(not 0 <= x <= 1 for x in cs):
            raise ValueError("coordinates must lie in [0,1]")

    @property
    def dim(self) -> int:
        return len(self.coords)


def truncated_metric(a: Sequence[Rat], b: Sequence[Rat]) -> Rat:
    """sum_i 2^-i |a_i - b_i| over the stored coordinates."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return sum(
        (Fraction(1, 1 << i) * abs(a[i] - b[i]) for i in range(len(a))), Fraction(0)
    )


# ---------------------------------------------------------------------------
# Scalar and product limit-point selection
# ---------------------------------------------------------------------------


def bw_select(xs: FinSeq | Sequence[Rat], depth: int) -> SelectionCertificate:
    """Majority-count bisection on [0,1] with a greedy certified subsequence.

    At each level the half holding the most surviving points wins (ties go
    left), so the level-l interval always keeps at least half of the
    points alive at level l; the candidate is the final midpoint.
    """
    seq = xs if isinstance(xs, FinSeq) else FinSeq(tuple(xs))
    pts = seq.points
    lo, hi = Fraction(0), Fraction(1)
    alive = list(range(len(pts)))
    for _ in range(depth):
        mid = (lo + hi) / 2
        left = [i for i in alive if pts[i] <= mid]
        right = [i for i in alive if pts[i] > mid]
        if len(left) >= len(right):
            hi, alive = mid, left
        else:
            lo, alive = mid, right
    candidate = (lo + hi) / 2
    g: list[int] = []
    levels: list[CertLevel] = []
    exhausted_at: int | None = None
    prev = -1
    for n in range(depth + 1):
        bound = Fraction(1, 1 << n)
        pick = next(
            (i for i in range(prev + 1, len(pts)) if abs(pts[i] - candidate) <= bound),
            None,
        )
        if pick is None:
            exhausted_at = n
            break
        g.append(pick)
        levels.append(CertLevel(n, pick, abs(pts[pick] - candidate), bound))
        prev = pick
    return SelectionCertificate(
        g=tuple(g),
        candidate=candidate,
        levels=tuple(levels),
        exhausted_at=exhausted_at,
    )


def bw_product_select(
    ps: Sequence[ProductPoint], depth: int
) -> SelectionCertificate:
    """Majority bisection in the truncated product metric.

    Coordinates are refined greedily by largest metric contribution until
    the surviving box has diameter <= 2^-(depth+1); assertions are exact
    distances in the truncated metric, with the tail slack 2^-(D-1)
    recorded separately.
    """
    if not ps:
        raise ValueError("empty point list")
    D = ps[0].dim
    if any(p.dim != D for p in ps):
        raise ValueError("dimension mismatch")
    if Fraction(1, 1 << D) > Fraction(1, 1 << (depth + 1)):
        raise DimensionTooSmall(f"need dimension >= {depth + 1}, have {D}")
    los = [Fraction(0)] * D
    his = [Fraction(1)] * D
    alive = list(range(len(ps)))
    target = Fraction(1, 1 << (depth + 1))

    def contribution(i: int) -> Fraction:
        return Fraction(1, 1 << i) * (his[i] - los[i])

    while sum((contribution(i) for i in range(D)), Fraction(0)) > target:
        i = max(range(D), key=lambda j: (contribution(j), -j))
        mid = (los[i] + his[i]) / 2
        left = [n for n in alive if ps[n].coords[i] <= mid]
        right = [n for n in alive if ps[n].coords[i] > mid]
        if len(left) >= len(right):
            his[i], alive = mid, left
        else:
            los[i], alive = mid, right
    candidate = tuple((los[i] + his[i]) / 2 for i in range(D))
    g: list[int] = []
    levels: list[CertLevel] = []
    exhausted_at: int | None = None
    prev = -1
    for n in range(depth + 1):
        bound = Fraction(1, 1 << n)
        pick = None
        for i in range(prev + 1, len(ps)):
            if truncated_metric(ps[i].coords, candidate) <= bound:
                pick = i
                break
        if pick is None:
            exhausted_at = n
            break
        g.append(pick)
        levels.append(
            CertLevel(n, pick, truncated_metric(ps[pick].coords, candidate), bound)
        )
        prev = pick
    return SelectionCertificate(
        g=tuple(g),
        candidate=candidate,
        levels=tuple(levels),
        exhausted_at=exhausted_at,
        truncation_slack=Fraction(1, 1 << (D - 1)),
    )


# ---------------------------------------------------------------------------
# Equicontinuous families and the diagonal selector
# ---------------------------------------------------------------------------

_GRID_CAP = 6  # at most 2^6 + 1 embedding samples per family


@dataclass(frozen=True)
class EquiFamily:
    """Doubly indexed family members[j][n] with bounds and moduli per j.

    bounds[j] dominates sup|f_{n,j}| for every n; moduli[j](l) gives a grid
    exponent making samples 2^-l-faithful.  grids[j] holds the dyadic
    sample points actually used for the product embedding (possibly empty
    when the declared modulus would need a grid beyond the cap), and
    embed_levels[j] the level those grids are declared to serve.
    """

    members: tuple[tuple[PiecewisePoly, ...], ...]
    bounds: tuple[Rat, ...]
    moduli: tuple[ModulusFn, ...]
    grids: tuple[tuple[Rat, ...], ...]
    embed_levels: tuple[int | None, ...]
    samples: tuple[tuple[tuple[Rat, ...], ...], ...] = field(default=())

    @property
    def family_count(self) -> int:
        return len(self.members)

    @property
    def member_count(self) -> int:
        return len(self.members[0]) if self.members else 0


def equi_family(
    members: Sequence[Sequence[PiecewisePoly]],
    bounds: Sequence[Rat],
    moduli: Sequence[ModulusFn],
    grids: Sequence[Sequence[Rat]],
    embed_levels: Sequence[int | None],
) -> EquiFamily:
    """Validate and sample an equicontinuous family.

    Checks: equal member counts, |samples| <= bounds[j] exactly, and grid
    step <= 2^-moduli[j](embed_levels[j]) wherever a grid is declared
    (else GridTooCoarse).
    """
    members = tuple(tuple(row) for row in members)
    bounds = tuple(Fraction(u) for u in bounds)
    grids = tuple(tuple(Fraction(x) for x in g) for g in grids)
    embed_levels = tuple(embed_levels)
    if len({len(row) for row in members}) > 1:
        raise ValueError("ragged family")
    samples = []
    for j, row in enumerate(members):
        grid = grids[j]
        lvl = embed_levels[j]
        if grid and lvl is not None:
            need = Fraction(1, 1 << moduli[j](lvl))
            step = max(grid[i + 1] - grid[i] for i in range(len(grid) - 1))
            if step > need:
                raise GridTooCoarse(j, lvl)
        row_samples = []
        for f in row:
            vals = tuple(f(x) for x in grid)
            if any(abs(v) > bounds[j] for v in vals):
                bad = max((abs(v) for v in vals))
                raise ValueError(
                    f"family {j} exceeds its bound: |sample| = {bad} > {bounds[j]}"
                )
            row_samples.append(vals)
        samples.append(tuple(row_samples))
    return EquiFamily(
        members=members,
        bounds=bounds,
        moduli=tuple(moduli),
        grids=grids,
        embed_levels=embed_levels,
        samples=tuple(samples),
    )


def _cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def family_embedding(fam: EquiFamily) -> list[ProductPoint]:
    """One product point per member index n: rescaled samples, coordinates
    ordered by the pairing of (sample index, family index)."""
    u_glob = max(fam.bounds) if fam.bounds else Fraction(0)
    scale = 2 * u_glob if u_glob > 0 else Fraction(1)
    keys = []
    for j in range(fam.family_count):
        for i in range(len(fam.grids[j])):
            keys.append((_cantor_pair(i, j), i, j))
    keys.sort()
    points = []
    for n in range(fam.member_count):
        coords = tuple(
            fam.samples[j][n][i] / scale + Fraction(1, 2) for (_, i, j) in keys
        )
        points.append(ProductPoint(coords))
    return points


class _SupCache:
    """Cached exact upper bounds on sup |f - g| for family member pairs."""

    def __init__(self, fam: EquiFamily, tol: Rat):
        self.fam = fam
        self.tol = tol
        self._cache: dict[tuple, Rat] = {}

    def bound(self, j: int, n_a: int, n_b: int) -> Rat:
        fa, fb = self.fam.members[j][n_a], self.fam.members[j][n_b]
        if fa is fb or fa == fb:
            return Fraction(0)
        key = (j, fa, fb) if hash((fa,)) <= hash((fb,)) else (j, fb, fa)
        if key not in self._cache:
            self._cache[key] = pw_sup_bound(fa - fb, self.tol)
        return self._cache[key]


def _greedy_thin(pool: Sequence[int], accept, want: int) -> list[int]:
    """Greedy strictly-increasing subsequence through an acceptance test."""
    selected: list[int] = []
    for cand in pool:
        if selected and cand <= selected[-1]:
            continue
        if accept(selected, cand):
            selected.append(cand)
            if len(selected) >= want:
                break
    return selected


def aa_diagonal_select(
    fam: EquiFamily, depth: int, want: int | None = None
) -> tuple[int, ...]:
    """Select g so the family satisfies the uniform contract up to `depth`:
    for all k <= depth, j <= k, positions n, n' >= k:
        sup |f_{g(n),j} - f_{g(n'),j}| < 2^-k.

    Candidates come from the product-space selection on the embedded
    samples; the contract itself is enforced by exact sup enclosures, which
    is strictly stronger than converting grid agreement through the
    modulus.
    """
    want = want if want is not None else depth + 5
    points = family_embedding(fam)
    pool: list[int] = list(range(fam.member_count))
    if points and points[0].dim >= depth + 3:
        cert = bw_product_select(points, depth + 2)
        tail = [n for n in range(fam.member_count) if n not in set(cert.g)]
        pool = list(cert.g) + tail
    sups = _SupCache(fam, Fraction(1, 1 << (depth + 8)))

    def accept(selected: list[int], cand: int) -> bool:
        m = len(selected)
        for a_pos, a_idx in enumerate(selected):
            k = min(a_pos, m, depth)
            bound = Fraction(1, 1 << k)
            for j in range(min(k, fam.family_count - 1) + 1):
                if not sups.bound(j, a_idx, cand) < bound:
                    return False
        return True

    return tuple(_greedy_thin(pool, accept, want))


def verify_uniform_contract(fam: EquiFamily, g: Sequence[int], depth: int) -> bool:
    """Brute-force re-check of the uniform contract over all pairs."""
    sups = _SupCache(fam, Fraction(1, 1 << (depth + 8)))
    for k in range(depth + 1):
        for j in range(min(k, fam.family_count - 1) + 1):
            for a in range(k, len(g)):
                for b in range(a + 1, len(g)):
                    if not sups.bound(j, g[a], g[b]) < Fraction(1, 1 << k):
                        return False
    return True


# ---------------------------------------------------------------------------
# The bounded-variation selection pipeline and its reduction directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HSTInstance:
    """The product-space instance the pipeline feeds to the point selector."""

    points: tuple[ProductPoint, ...]
    fam: EquiFamily
    scales: tuple[Rat, ...]
    u: Rat
    v: Rat
    depth: int
    stored_depth: int


@dataclass(frozen=True)
class RateLevel:
    """Exact L1-rate assertion at one level: max pairwise distance vs bound."""

    n: int
    bound: Rat
    value: Rat

    @property
    def holds(self) -> bool:
        return self.value <= self.bound


@dataclass(frozen=True)
class RateCertificate:
    """Selected subsequence with per-level exact L1-rate assertions.

    Level k asserts, for all selected positions n, n' >= k,
        ||p_{g(n),K} - p_{g(n'),K}||_1 <= 2^-k + 2^(-k+2) v + 2^(-K+1)
    with K the least stored depth among the inputs.
    """

    g: tuple[int, ...]
    v: Rat
    stored_depth: int
    levels: tuple[RateLevel, ...]
    exhausted_at: int | None

    def verify(self, fs: Sequence[BVCode]) -> bool:
        for lv in self.levels:
            worst = Fraction(0)
            for a in range(lv.n, len(self.g)):
                for b in range(a + 1, len(self.g)):
                    diff = fs[self.g[a]].deepest() - fs[self.g[b]].deepest()
                    if not integral_abs_le(diff, Fraction(0), Fraction(1), lv.bound):
                        return False
                    worst = max(
                        worst,
                        integral_abs_info(diff, Fraction(0), Fraction(1)).value,
                    )
            if worst > lv.value:
                return False
        return True


@dataclass(frozen=True)
class HellyResult:
    certificate: RateCertificate
    limit: BVCode
    bw_certificate: SelectionCertificate


def rate_bound_l1(k: int, v: Rat, stored_depth: int) -> Fraction:
    """2^-k + 2^(-k+2) v + 2^(-K+1): selection rate plus smoothing and
    finite-prefix slack."""
    return (
        Fraction(1, 1 << k)
        + Fraction(4, 1 << k) * Fraction(v)
        + Fraction(2, 1 << stored_depth)
    )


def bw_to_hst_instance(
    xs: FinSeq | Sequence[Rat], depth: int = DEFAULT_DEPTH
) -> list[BVCode]:
    """Reals in [0,1] as constant codes: v = 0 and ||f_n||_1 = x_n exactly."""
    seq = xs if isinstance(xs, FinSeq) else FinSeq(tuple(xs))
    return [bvcode_from_poly(Poly.const(x), depth=depth) for x in seq.points]


def hst_to_bw_instance(
    fs: Sequence[BVCode],
    u: Rat,
    v: Rat,
    depth: int,
    m: int = 1,
    scales: int | None = None,
) -> HSTInstance:
    """Materialize the point sequence the selection pipeline hands to the
    product-space selector, together with the equicontinuous family.

    Hypotheses are checked exactly: every coded norm enclosure must stay
    below u and every stored variation bound below v (HypothesisViolation
    carries the witness).  Family j smooths at scale 2^-(j+1); bounds and
    moduli come from exact per-member sup enclosures of the smoothed
    functions and their derivatives.
    """
    u, v = Fraction(u), Fraction(v)
    fs = list(fs)
    if not fs:
        raise ValueError("empty family")
    for n, f in enumerate(fs):
        hi = bvcode_norm_l1(f, f.depth).hi
        if hi > u:
            raise HypothesisViolation("u", n, hi)
        if f.v > v:
            raise HypothesisViolation("v", n, f.v)
    K = min(f.depth for f in fs)
    count = scales if scales is not None else depth + ceil_log2(v + 1) + 2
    eps_list = [Fraction(1, 1 << j) for j in range(1, count + 1)]
    conv_cache: dict[tuple, PiecewisePoly] = {}
    # exact per-member sup enclosures are affordable for low degrees; for
    # high-degree entries fall back to the sound a-priori kernel bounds
    # 2 * (u + tail) * sup(eta) (the factor 2 covers the reflected window)
    cheap_sups = max(f.deepest().degree for f in fs) <= 12
    norm_cap = u + Fraction(2, 1 << K)

    members: list[tuple[PiecewisePoly, ...]] = []
    bounds: list[Rat] = []
    moduli: list[ModulusFn] = []
    grids: list[tuple[Rat, ...]] = []
    embed_levels: list[int | None] = []
    for eps in eps_list:
        row = []
        for f in fs:
            key = (f.deepest().coeffs, eps)
            if key not in conv_cache:
                conv_cache[key] = mollify_poly(f.deepest(), eps, m)
            row.append(conv_cache[key])
        distinct = {pw: None for pw in row}
        if cheap_sups:
            sup_tol = Fraction(1, 1 << 20)
            u_j = max(
                (pw_sup_bound(pw, sup_tol) for pw in distinct), default=Fraction(0)
            )
            d_j = max(
                (
                    pw_sup_bound(pw.derivative(), Fraction(1, 1 << 10))
                    for pw in distinct
                ),
                default=Fraction(0),
            )
        else:
            sb = scaled_bump(m, eps)
            u_j = 2 * norm_cap * sb.sup()
            d_j = 2 * norm_cap * sb.sup_derivative_bound(Fraction(1, 1 << 10))
        if d_j == 0:
            modulus = ModulusFn.from_rule(lambda l: 0)
        else:
            off = 1 + ceil_log2(d_j)
            modulus = ModulusFn.from_rule(lambda l, off=off: max(0, l + off))
        lvl: int | None = None
        for cand_lvl in (2, 1, 0):
            if modulus(cand_lvl) <= _GRID_CAP:
                lvl = cand_lvl
                break
        if lvl is None:
            grid: tuple[Rat, ...] = ()
        else:
            g_exp = modulus(lvl)
            grid = tuple(Fraction(i, 1 << g_exp) for i in range((1 << g_exp) + 1))
        members.append(tuple(row))
        bounds.append(u_j)
        moduli.append(modulus)
        grids.append(grid)
        embed_levels.append(lvl)
    fam = equi_family(members, bounds, moduli, grids, embed_levels)
    points = family_embedding(fam)
    # pad so the product selector always has enough coordinates
    need = depth + 5
    if points and points[0].dim < need:
        pad = need - points[0].dim
        points = [
            ProductPoint(p.coords + (Fraction(0),) * pad) for p in points
        ]
    elif not points:
        points = [ProductPoint((Fraction(0),) * need) for _ in fs]
    return HSTInstance(
        points=tuple(points),
        fam=fam,
        scales=tuple(eps_list),
        u=u,
        v=v,
        depth=depth,
        stored_depth=K,
    )


def helly_postprocess(
    fs: Sequence[BVCode],
    inst: HSTInstance,
    bw_cert: SelectionCertificate,
    want: int | None = None,
) -> HellyResult:
    """Convert a product-space selection into an L1-rate certificate and a
    limit code.

    Thinning enforces both the uniform sup contract across smoothing scales
    and the final L1 bound directly (each decided exactly); the limit comes
    from diagonal re-indexing of the selected codes after dropping the
    first ceil(log2(1+4v)) positions, which restores a clean 2^-n rate.
    """
    fs = list(fs)
    depth = inst.depth
    v = inst.v
    K = inst.stored_depth
    shift = ceil_log2(1 + 4 * v) if v > 0 else 0
    want = want if want is not None else depth + shift + 4
    pool = list(bw_cert.g) + [
        n for n in range(len(fs)) if n not in set(bw_cert.g)
    ]
    sups = _SupCache(inst.fam, Fraction(1, 1 << (depth + 8)))

    def accept(selected: list[int], cand: int) -> bool:
        m = len(selected)
        for a_pos, a_idx in enumerate(selected):
            k = min(a_pos, m, depth)
            sup_bound = Fraction(1, 1 << k)
            for j in range(min(k, inst.fam.family_count - 1) + 1):
                if not sups.bound(j, a_idx, cand) < sup_bound:
                    return False
            diff = fs[a_idx].deepest() - fs[cand].deepest()
            if not integral_abs_le(
                diff, Fraction(0), Fraction(1), rate_bound_l1(k, v, K)
            ):
                return False
        return True

    selected = _greedy_thin(pool, accept, want)
    g = tuple(selected)
    dist_cache: dict[tuple[int, int], Fraction] = {}

    def pair_value(a: int, b: int) -> Fraction:
        key = (min(a, b), max(a, b))
        if key not in dist_cache:
            diff = fs[key[0]].deepest() - fs[key[1]].deepest()
            dist_cache[key] = integral_abs_info(diff, Fraction(0), Fraction(1)).value
        return dist_cache[key]

    levels = []
    exhausted_at: int | None = None if len(g) >= want else max(0, len(g) - 1)
    for k in range(min(depth, max(0, len(g) - 1)) + 1):
        worst = Fraction(0)
        for a in range(k, len(g)):
            for b in range(a + 1, len(g)):
                worst = max(worst, pair_value(g[a], g[b]))
        levels.append(RateLevel(n=k, bound=rate_bound_l1(k, v, K), value=worst))
    cert = RateCertificate(
        g=g, v=v, stored_depth=K, levels=tuple(levels), exhausted_at=exhausted_at
    )
    # the thinning bound is capped at level `depth`, so only the first
    # depth - shift + 1 shifted positions are guaranteed to satisfy the
    # diagonal witness; keep to those (the re-index re-checks exactly anyway)
    length = max(2, depth - shift + 1)
    reindex_family = [fs[i] for i in g[shift : shift + length]]
    if not reindex_family:
        reindex_family = [fs[i] for i in g]
    limit = bvcode_reindex(reindex_family, v)
    return HellyResult(certificate=cert, limit=limit, bw_certificate=bw_cert)


def helly_select(
    fs: Sequence[BVCode],
    u: Rat,
    v: Rat,
    depth: int,
    m: int = 1,
    want: int | None = None,
) -> HellyResult:
    """Select an L1-convergent subsequence from codes with ||f_n||_1 <= u and
    variation bounds <= v; returns the exact rate certificate and the limit
    code (which validates against the same v).

    Identical, by construction, to
    helly_postprocess(fs, I, bw_product_select(I.points, depth + 2)) with
    I = hst_to_bw_instance(fs, u, v, depth, m).
    """
    inst = hst_to_bw_instance(fs, u, v, depth, m)
    bw_cert = bw_product_select(list(inst.points), depth + 2)
    return helly_postprocess(fs, inst, bw_cert, want)
