from fractions import Fraction as F

import pytest

from bvcodes.piecewise import (
    PiecewisePoly,
    pw_integral_abs,
    pw_integral_abs_le,
    pw_sup_bound,
    pw_variation,
    pw_variation_upper,
)
from bvcodes.poly import Poly


def tent():
    # x on [0,1/2], 1-x on [1/2,1]
    return PiecewisePoly((F(0), F(1, 2), F(1)), (Poly.x(), Poly.of(1, -1)))


def test_construction_validation():
    with pytest.raises(ValueError):
        PiecewisePoly((F(0),), ())
    with pytest.raises(ValueError):
        PiecewisePoly((F(0), F(0)), (Poly.x(),))
    with pytest.raises(ValueError):
        PiecewisePoly((F(0), F(1)), (Poly.x(), Poly.x()))


def test_breakpoint_evaluation_uses_right_piece():
    f = PiecewisePoly((F(0), F(1, 2), F(1)), (Poly.zero(), Poly.const(1)))
    assert f(F(1, 2)) == 1  # right-hand piece at an interior breakpoint
    assert f(F(1)) == 1  # left-hand piece at the right end
    assert f(F(0)) == 0


def test_tent_integral_and_sup():
    f = tent()
    assert pw_integral_abs(f) == F(1, 4)
    sup = pw_sup_bound(f)
    assert F(1, 2) <= sup <= F(1, 2) + F(1, 1 << 20)


def test_zero_and_single_piece():
    z = PiecewisePoly.from_poly(Poly.zero())
    assert pw_integral_abs(z) == 0 and pw_sup_bound(z) == 0
    sq = PiecewisePoly.from_poly(Poly.of(0, 0, 1))
    assert pw_integral_abs(sq) == F(1, 3)
    assert pw_sup_bound(sq) == 1


def test_algebra_common_refinement():
    f = tent()
    g = PiecewisePoly((F(0), F(1, 4), F(1)), (Poly.const(1), Poly.zero()))
    h = f + g
    assert h(F(0)) == 1
    assert h(F(3, 4)) == F(1, 4)
    assert (f - f)(F(1, 3)) == 0
    assert pw_integral_abs(f.scale(-2)) == F(1, 2)


def test_jumps_and_variation():
    step = PiecewisePoly((F(0), F(1, 2), F(1)), (Poly.zero(), Poly.const(1)))
    assert step.jumps() == [F(1)]
    assert not step.is_continuous()
    assert pw_variation(step) == 1
    f = tent()
    assert f.is_continuous()
    assert pw_variation(f) == 1  # up 1/2, down 1/2
    assert pw_variation_upper(f) == 1


def test_pw_integral_abs_le():
    f = tent()
    assert pw_integral_abs_le(f, F(1, 4))
    assert not pw_integral_abs_le(f, F(1, 4) - F(1, 10**20))


def test_mul_poly_and_integral():
    f = tent()
    g = f.mul_poly(Poly.of(0, 1))
    # int x*tent = int_0^1/2 x^2 + int_1/2^1 x(1-x) = 1/24 + 1/12
    assert g.integral() == F(1, 24) + F(1, 12)
