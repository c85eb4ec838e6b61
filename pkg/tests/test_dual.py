import random
from fractions import Fraction as F

import pytest

from bvcodes.codes import bvcode_from_poly, bvcode_new, l1code_new
from bvcodes.codes import BVCode
from bvcodes.dual import (
    MonotonePiece,
    Pi01Gadget,
    TestFn,
    cantor_sum,
    check_jordan_consistency,
    decode_pi01,
    dual_eval_c0,
    jordan_poly,
    ramp_piecewise,
    ramp_projection,
    reversal_gadget,
)
from bvcodes.errors import BoundaryViolation, DepthExhausted, NotAGadgetCode
from bvcodes.piecewise import pw_integral_abs
from bvcodes.poly import Poly, integral_abs_le


def code_of_x(depth=12):
    return bvcode_from_poly(Poly.x(), depth=depth)


def test_dual_contains_pairing_value():
    # f = identity, h = x(1-x): -int (1-2x) x dx = 1/6
    f = code_of_x()
    h = TestFn.from_poly(Poly.of(0, 1, -1))
    for k in range(2, 11):
        iv = dual_eval_c0(f, h, k)
        assert iv.contains(F(1, 6))
        assert iv.width <= h.derivative_sup_bound() * F(2, 1 << k)
    assert (dual_eval_c0(f, h, 5).lo + dual_eval_c0(f, h, 5).hi) / 2 == F(1, 6)


def test_dual_zero_test_function():
    iv = dual_eval_c0(code_of_x(), TestFn.from_poly(Poly.zero()), 3)
    assert iv.lo == iv.hi == 0


def test_dual_constant_code_gives_zero():
    f = bvcode_from_poly(Poly.const(F(2, 7)), depth=8)
    h = TestFn.from_poly(Poly.of(0, 1, -1))
    iv = dual_eval_c0(f, h, 4)
    assert (iv.lo + iv.hi) / 2 == 0
    assert iv.contains(F(0))


def test_dual_boundary_violation():
    with pytest.raises(BoundaryViolation):
        dual_eval_c0(code_of_x(), TestFn.from_poly(Poly.x()), 3)


def test_dual_depth_exhausted():
    with pytest.raises(DepthExhausted):
        dual_eval_c0(bvcode_from_poly(Poly.x(), depth=3), TestFn.from_poly(Poly.of(0, 1, -1)), 3)


def perturbed_code_of_x(depth=12):
    # same L1 class as the identity, different representatives
    prefix = [Poly.x() + Poly.const(F(1, 1 << (k + 2))) for k in range(depth + 1)]
    return bvcode_new(prefix, 1)


def test_dual_code_independence():
    h = TestFn.from_poly(Poly.of(0, 1, -1))
    a, b = code_of_x(), perturbed_code_of_x()
    for k in range(2, 10):
        assert dual_eval_c0(a, h, k).overlaps(dual_eval_c0(b, h, k))
    wa, wb = dual_eval_c0(a, h, 9), dual_eval_c0(b, h, 9)
    assert wa.width < dual_eval_c0(a, h, 2).width  # shrinking enclosures


def test_dual_linearity_inclusion():
    f = bvcode_from_poly(Poly.of(0, 0, 1), depth=10)
    h1 = TestFn.from_poly(Poly.of(0, 1, -1))
    h2 = TestFn.from_poly(Poly.of(0, 1, -3, 2))  # x(1-x)(1-2x)
    h12 = TestFn.from_poly(Poly.of(0, 1, -1) + Poly.of(0, 1, -3, 2))
    k = 6
    a, b, c = dual_eval_c0(f, h1, k), dual_eval_c0(f, h2, k), dual_eval_c0(f, h12, k)
    tol = F(1, 1 << 18)  # sup-bound tolerance of the two separate radii
    assert a.lo + b.lo - tol <= c.lo and c.hi <= a.hi + b.hi + tol
    assert (c.lo + c.hi) / 2 == (a.lo + a.hi) / 2 + (b.lo + b.hi) / 2


def test_ramp_shape():
    pw = ramp_piecewise(2, m=2)
    assert pw(F(0)) == 1
    assert pw(F(1)) == 0
    delta = F(1, 8)
    assert pw(delta) == 0
    # ||ramp||_1 = delta * c_m/(m+1) < delta
    assert pw_integral_abs(pw) == delta * F(15, 16) / 3


def test_ramp_projection_exact_endpoints():
    for w in (0, 1, 3):
        q = ramp_projection(w)
        assert q(F(0)) == 1 and q(F(1)) == 0
        delta = F(1, 1 << (w + 1))
        # stays below the rate budget at the switch-on level
        assert integral_abs_le(q, 0, 1, delta)


def test_reversal_gadget_entries():
    g = Pi01Gadget.from_table({0: None, 1: 2})
    assert reversal_gadget(g, 0, 10).is_zero()
    assert reversal_gadget(g, 1, 1).is_zero()  # witness not reached yet
    q = reversal_gadget(g, 1, 2)
    assert q(F(0)) == 1 and q(F(1)) == 0
    assert reversal_gadget(g, 1, 7) == q  # entry is fixed once switched on


def test_gadget_rate_at_transition():
    g = Pi01Gadget.from_table({0: 3})
    prefix = [reversal_gadget(g, 0, k) for k in range(8)]
    l1code_new(prefix)  # exact rate check across the switch-on


def test_cantor_positions_match_decode_table():
    c = cantor_sum(Pi01Gadget.from_table({0: None}), 1, 6)
    p = c.prefix[6]
    assert -(p(F(1)) - p(F(0))) == 0  # in [0, 1/3]
    for k in range(7):
        assert decode_pi01(c, 0, k) == "holds-so-far"

    c = cantor_sum(Pi01Gadget.from_table({0: 0}), 1, 6)
    p = c.prefix[6]
    assert -(p(F(1)) - p(F(0))) == F(2, 3)  # in [2/3, 1]
    assert decode_pi01(c, 0, 6) == "refuted"

    c = cantor_sum(Pi01Gadget.from_table({0: None, 1: 3}), 2, 6)
    p = c.prefix[6]
    assert -(p(F(1)) - p(F(0))) == F(2, 9)  # in [2/9, 1/3]
    assert decode_pi01(c, 0, 6) == "holds-so-far"
    assert decode_pi01(c, 1, 6) == "refuted"


def test_decode_monotone_flip():
    c = cantor_sum(Pi01Gadget.from_table({0: 3}), 1, 8)
    seen_refuted = False
    for k in range(9):
        verdict = decode_pi01(c, 0, k)
        if seen_refuted:
            assert verdict == "refuted"  # refutation is permanent
        if verdict == "refuted":
            seen_refuted = True
        else:
            assert k < 3
    assert seen_refuted


def test_decode_rejects_foreign_codes():
    with pytest.raises(NotAGadgetCode):
        decode_pi01(bvcode_from_poly(Poly.x(), depth=4), 0, 2)
    tampered = BVCode(bvcode_from_poly(Poly.x(), depth=4).code, F(1), {"kind": "other"})
    with pytest.raises(NotAGadgetCode):
        decode_pi01(tampered, 0, 2)


def test_decode_beyond_truncation_is_unknown():
    c = cantor_sum(Pi01Gadget.from_table({0: None}), 1, 4)
    assert decode_pi01(c, 3, 4) == "unknown"


def test_cantor_code_validates_with_its_v():
    c = cantor_sum(Pi01Gadget.from_table({0: 1, 1: None, 2: 2}), 3, 6)
    bvcode_new(c.prefix, c.v)
    assert c.v == F(4, 3) + F(4, 9) + F(4, 27)


def test_jordan_examples():
    assert jordan_poly(Poly.of(0, 1, -1)) == (
        MonotonePiece(F(0), F(1, 2), "nondecreasing"),
        MonotonePiece(F(1, 2), F(1), "nonincreasing"),
    )
    assert jordan_poly(Poly.x()) == (MonotonePiece(F(0), F(1), "nondecreasing"),)
    assert jordan_poly(Poly.const(5)) == (MonotonePiece(F(0), F(1), "nondecreasing"),)


def test_jordan_consistent_with_variation():
    rng = random.Random(71)
    for _ in range(25):
        p = Poly.of(*[F(rng.randint(-5, 5)) for _ in range(rng.randint(1, 6))])
        assert check_jordan_consistency(p)
    # rational critical points: exact equality of the two routes
    p = Poly.of(0, 0, F(3), F(-2))  # p' = 6x(1-x), critical at 0 and 1
    assert check_jordan_consistency(p)
