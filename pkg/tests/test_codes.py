import random
from fractions import Fraction as F

import pytest

from bvcodes.codes import (
    ModulusFn,
    bvcode_from_modulus,
    bvcode_from_poly,
    bvcode_linear_comb,
    bvcode_new,
    bvcode_norm_l1,
    bvcode_reindex,
    bvcode_step,
    l1code_new,
    step_function_l1_distance,
)
from bvcodes.errors import DepthExhausted, GapTooSmall, RateViolation, VariationViolation
from bvcodes.mollify import smooth_step_piecewise
from bvcodes.piecewise import pw_variation
from bvcodes.poly import Poly, integral_abs, integral_abs_le, poly_variation


def test_l1code_examples():
    assert l1code_new([Poly.x()] * 3).depth == 2
    l1code_new([Poly.zero(), Poly.x()])  # ||x||_1 = 1/2 <= 1
    with pytest.raises(RateViolation) as exc:
        l1code_new([Poly.zero(), Poly.of(0, 3)])  # ||3x||_1 = 3/2 > 1
    assert exc.value.level == 0
    assert exc.value.norm_lower_bound == F(3, 2)


def test_bvcode_examples():
    bvcode_new([Poly.x()] * 2, 1)
    with pytest.raises(VariationViolation) as exc:
        bvcode_new([Poly.x()] * 2, F(1, 2))
    assert exc.value.level == 0
    bvcode_new([Poly.of(0, 1, -1)] * 2, F(1, 2))  # V(x(1-x)) = 1/2


def test_validity_recheckable_by_independent_pass():
    code = bvcode_from_poly(Poly.of(0, 1, -1), depth=6)
    for k in range(code.depth):
        diff = code.prefix[k] - code.prefix[k + 1]
        assert integral_abs_le(diff, 0, 1, F(1, 1 << k))
    for p in code.prefix:
        assert integral_abs_le(p.derivative(), 0, 1, code.v)


def test_from_poly_examples():
    assert bvcode_from_poly(Poly.x()).v == 1
    assert bvcode_from_poly(Poly.const(F(2, 7))).v == 0
    assert bvcode_from_poly(Poly.of(0, 1, -1)).v == F(1, 2)
    assert bvcode_from_poly(Poly.x()).depth == 24  # default depth


def test_linear_comb_identity_and_cancellation():
    f = bvcode_from_poly(Poly.x(), depth=8)
    same = bvcode_linear_comb(1, f, 0, f)
    assert same.prefix == f.prefix and same.v == f.v
    zero = bvcode_linear_comb(1, f, -1, f)
    assert all(p.is_zero() for p in zero.prefix)
    assert zero.v == 2 * f.v  # bound bookkeeping, not tightened


def test_linear_comb_scaling_shift():
    f = bvcode_from_poly(Poly.x(), depth=8)
    doubled = bvcode_linear_comb(2, f, 0, f)
    assert doubled.v == 2
    assert doubled.depth == f.depth - 1  # shift s = 1 for |a|+|b| = 2


def test_linear_comb_closure_property():
    rng = random.Random(41)
    for _ in range(10):
        f = bvcode_from_poly(Poly.of(*[F(rng.randint(-3, 3)) for _ in range(5)]), depth=8)
        g = bvcode_from_poly(Poly.of(*[F(rng.randint(-3, 3)) for _ in range(4)]), depth=8)
        a, b = F(rng.randint(-4, 4)), F(rng.randint(-4, 4))
        out = bvcode_linear_comb(a, f, b, g)
        bvcode_new(out.prefix, out.v)  # revalidates or raises


def test_linear_comb_depth_exhausted():
    f = bvcode_from_poly(Poly.x(), depth=1)
    with pytest.raises(DepthExhausted):
        bvcode_linear_comb(1000, f, 0, f)


def test_reindex_constant_family():
    f = bvcode_from_poly(Poly.x(), depth=8)
    r = bvcode_reindex([f] * 6, 1)
    assert r.prefix[0] == Poly.x()
    assert r.v == 1


def test_reindex_shifted_family():
    fam = [bvcode_from_poly(Poly.of(F(1, 1 << n), 1), depth=12) for n in range(10)]
    r = bvcode_reindex(fam, 1)
    # diagonal entries are x + 2^-(k+s): distance to x shrinks with k
    assert integral_abs(r.prefix[-1] - Poly.x(), 0, 1) <= F(1, 1 << (r.depth - 1))


def test_reindex_carries_bound_and_rejects_larger_v():
    fam = [bvcode_from_poly(Poly.x(), depth=6)] * 4
    assert bvcode_reindex(fam, 1).v == 1
    with pytest.raises(VariationViolation):
        bvcode_reindex(fam, F(1, 2))


def test_reindex_witness_rejects_divergent_family():
    a = bvcode_from_poly(Poly.zero(), depth=10)
    b = bvcode_from_poly(Poly.const(1), depth=10)
    with pytest.raises(RateViolation):
        bvcode_reindex([a, b, a, b, a, b], 1)


def test_norm_interval_examples():
    f = bvcode_from_poly(Poly.x(), depth=12)
    assert bvcode_norm_l1(f, 5).contains(F(1, 2))
    z = bvcode_from_poly(Poly.zero(), depth=6)
    assert bvcode_norm_l1(z, 4).contains(F(0))
    g = bvcode_from_poly(Poly.of(F(-1, 2), 1), depth=12)
    ni = bvcode_norm_l1(g, 10)
    assert ni.contains(F(1, 4))
    assert ni.width == F(4, 1 << 10)  # radius 2^-(m-1) each side


def test_norm_intervals_nested_after_widening():
    f = bvcode_from_poly(Poly.of(0, 1, -1), depth=12)
    for m in range(1, 11):
        inner = bvcode_norm_l1(f, m + 1)
        outer = bvcode_norm_l1(f, m)
        pad = F(1, 1 << m)
        assert outer.lo - pad <= inner.lo and inner.hi <= outer.hi + pad


def test_norm_depth_exhausted():
    f = bvcode_from_poly(Poly.x(), depth=3)
    with pytest.raises(DepthExhausted):
        bvcode_norm_l1(f, 4)


def test_step_codes():
    one_jump = bvcode_step([0, F(1, 2), 1], [0, 1], F(1, 16), 2, depth=4)
    assert one_jump.v == 1
    box = bvcode_step([0, F(1, 4), F(3, 4), 1], [0, 1, 0], F(1, 10), 2, depth=4)
    assert box.v == 2
    flat = bvcode_step([0, F(1, 3), 1], [F(2, 5), F(2, 5)], F(1, 16), 1, depth=5)
    assert flat.v == 0
    with pytest.raises(GapTooSmall):
        bvcode_step([0, F(1, 2), 1], [0, 1], F(1, 2), 1)


def test_separability_demo():
    # smoothed chi_[0,u] minus smoothed chi_[0,w]: variation exactly 2 once
    # the edge bumps are disjoint, so no countable set can approximate all
    # of them in the variation-aware norm
    eps = F(1, 64)
    u, w = F(1, 3), F(2, 3)
    step_u = smooth_step_piecewise([0, u, 1], [1, 0], eps, 2)
    step_w = smooth_step_piecewise([0, w, 1], [1, 0], eps, 2)
    assert pw_variation(step_u - step_w) == 2
    close = smooth_step_piecewise([0, u + 3 * eps, 1], [1, 0], eps, 2)
    assert pw_variation(step_u - close) == 2  # supports disjoint iff gap > 2 eps


def test_step_function_l1_distance():
    d = step_function_l1_distance([0, F(1, 2), 1], [0, 1], [0, F(1, 2), 1], [0, 0])
    assert d == F(1, 2)


def test_from_modulus_constant_sampler():
    code = bvcode_from_modulus(lambda x: F(1, 3), ModulusFn.from_rule(lambda n: n), v=0, depth=3)
    assert code.v == 0
    assert all(p == Poly.const(F(1, 3)) for p in code.prefix)


def test_from_modulus_identity_sampler():
    code = bvcode_from_modulus(
        lambda x: x, ModulusFn.from_rule(lambda n: n), v=1, depth=4, m=2
    )
    # the coded limit is L1-close to the identity
    assert integral_abs(code.deepest() - Poly.x(), 0, 1) <= F(1, 8)
    assert code.v == 1


def test_from_modulus_variation_violation():
    # three-step sampler with jumps summing past the claimed bound
    def sampler(x):
        if x < F(1, 4):
            return F(0)
        if x < F(1, 2):
            return F(1)
        return F(0)

    with pytest.raises(VariationViolation):
        bvcode_from_modulus(sampler, ModulusFn.from_rule(lambda n: n + 2), v=F(3, 2), depth=2)


def test_modulus_fn_validation():
    with pytest.raises(ValueError):
        ModulusFn.from_table([3, 2, 1])
    m = ModulusFn.from_table([1, 2, 5])
    assert m(0) == 1 and m(5) == 5
