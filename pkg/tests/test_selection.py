import random
from fractions import Fraction as F

import pytest

from bvcodes.codes import ModulusFn, bvcode_from_poly, bvcode_new, bvcode_norm_l1
from bvcodes.errors import DimensionTooSmall, GridTooCoarse, HypothesisViolation
from bvcodes.piecewise import PiecewisePoly
from bvcodes.poly import Poly
from bvcodes.selection import (
    FinSeq,
    ProductPoint,
    aa_diagonal_select,
    bw_product_select,
    bw_select,
    bw_to_hst_instance,
    equi_family,
    helly_postprocess,
    helly_select,
    hst_to_bw_instance,
    truncated_metric,
    verify_uniform_contract,
)


def test_bw_constant_sequence():
    cert = bw_select([F(1, 3)] * 12, depth=5)
    assert cert.exhausted_at is None
    assert abs(cert.candidate - F(1, 3)) <= F(1, 32)
    assert all(lv.holds for lv in cert.levels)
    assert cert.verify([F(1, 3)] * 12)


def test_bw_oscillating_sequence():
    xs = [F(1, 2) + F((-1) ** n, n + 2) for n in range(64)]
    cert = bw_select(xs, depth=5)
    assert cert.exhausted_at is None
    assert abs(cert.candidate - F(1, 2)) <= F(1, 16)
    assert cert.verify(xs)
    # brute-force re-check of every assertion
    for lv in cert.levels:
        assert abs(xs[lv.index] - cert.candidate) == lv.value <= lv.bound


def test_bw_alternating_left_tiebreak():
    xs = [F(n % 2) for n in range(64)]
    cert = bw_select(xs, depth=5)
    assert cert.candidate == F(1, 64)  # ties go left: candidate near 0
    assert all(xs[i] == 0 for i in cert.g)


def test_bw_single_point():
    cert = bw_select([F(2, 7)], depth=4)
    assert len(cert.g) >= 1
    assert cert.g[0] == 0


def test_bw_majority_soundness():
    # the surviving interval always holds at least half the live points
    rng = random.Random(61)
    xs = [F(rng.randint(0, 256), 256) for _ in range(50)]
    lo, hi = F(0), F(1)
    alive = list(range(len(xs)))
    for _ in range(6):
        mid = (lo + hi) / 2
        left = [i for i in alive if xs[i] <= mid]
        right = [i for i in alive if xs[i] > mid]
        keep = left if len(left) >= len(right) else right
        assert 2 * len(keep) >= len(alive)
        alive = keep
        lo, hi = (lo, mid) if keep is left else (mid, hi)


def test_bw_determinism():
    xs = [F(k % 7, 7) for k in range(40)]
    assert bw_select(xs, 5) == bw_select(xs, 5)


def test_product_all_equal():
    p = ProductPoint(tuple(F(k, 9) for k in range(8)))
    cert = bw_product_select([p] * 5, depth=4)
    assert cert.exhausted_at is None
    assert cert.verify([p] * 5)
    assert cert.truncation_slack == F(1, 1 << 7)


def test_product_dimension_too_small():
    with pytest.raises(DimensionTooSmall):
        bw_product_select([ProductPoint((F(1, 2),))] * 3, depth=4)


def test_product_reduces_to_scalar_on_first_coordinate():
    rng = random.Random(67)
    vals = [F(rng.randint(0, 16), 16) for _ in range(32)]
    ps = [ProductPoint((v,) + (F(1, 2),) * 7) for v in vals]
    pc = bw_product_select(ps, depth=4)
    sc = bw_select(vals, depth=4)
    assert abs(pc.candidate[0] - sc.candidate) <= F(1, 16) + F(1, 32)


def test_truncated_metric():
    a, b = (F(0), F(1)), (F(1), F(1))
    assert truncated_metric(a, b) == 1
    assert truncated_metric(a, a) == 0


def linear_family(J=6, N=12):
    members, moduli, grids = [], [], []
    for j in range(J):
        members.append(
            [PiecewisePoly.from_poly(Poly.of(0, F((-1) ** n, 1 << j))) for n in range(N)]
        )
        moduli.append(ModulusFn.from_rule(lambda l, j=j: max(0, l - j)))
        grids.append([F(i, 8) for i in range(9)])
    bounds = [F(1, 1 << j) for j in range(J)]
    return equi_family(members, bounds, moduli, grids, [3] * J)


def test_aa_constant_family_identity_prefix():
    members = [[PiecewisePoly.from_poly(Poly.const(F(1, 3)))] * 8]
    fam = equi_family(
        members, [1], [ModulusFn.from_rule(lambda l: 0)], [[F(0), F(1)]], [2]
    )
    g = aa_diagonal_select(fam, depth=3, want=5)
    assert g == (0, 1, 2, 3, 4)


def test_aa_alternating_linear_family():
    fam = linear_family()
    g = aa_diagonal_select(fam, depth=5)
    assert len({n % 2 for n in g}) == 1  # one parity survives
    assert verify_uniform_contract(fam, g, 5)


def test_aa_contract_fails_for_mixed_parities():
    fam = linear_family()
    assert not verify_uniform_contract(fam, (0, 1, 2, 3, 4, 5), 5)


def test_equi_family_validation():
    fam = linear_family()
    with pytest.raises(GridTooCoarse):
        equi_family(
            fam.members,
            fam.bounds,
            [ModulusFn.from_rule(lambda l: 10)] * fam.family_count,
            fam.grids,
            fam.embed_levels,
        )
    with pytest.raises(ValueError):
        equi_family(
            fam.members,
            [F(1, 100)] * fam.family_count,
            fam.moduli,
            fam.grids,
            fam.embed_levels,
        )


def test_helly_identical_codes():
    fs = [bvcode_from_poly(Poly.const(F(1, 3)), depth=12) for _ in range(8)]
    res = helly_select(fs, u=1, v=0, depth=4)
    assert res.certificate.g[:4] == (0, 1, 2, 3)
    assert all(lv.holds for lv in res.certificate.levels)
    assert bvcode_norm_l1(res.limit, res.limit.depth).contains(F(1, 3))
    assert res.certificate.verify(fs)


def test_helly_alternating_two_codes():
    fs = [
        bvcode_from_poly(Poly.const(F(1, 4) if n % 2 == 0 else F(3, 4)), depth=12)
        for n in range(16)
    ]
    res = helly_select(fs, u=1, v=0, depth=5)
    values = {fs[i].deepest()(F(0)) for i in res.certificate.g}
    assert len(values) == 1  # a single cluster survives
    ni = bvcode_norm_l1(res.limit, res.limit.depth)
    assert ni.contains(F(1, 4)) or ni.contains(F(3, 4))


def test_helly_limit_validates_with_input_v():
    fs = [bvcode_from_poly(Poly.of(0, 1, -1), depth=10) for _ in range(6)]
    res = helly_select(fs, u=1, v=F(1, 2), depth=3)
    bvcode_new(res.limit.prefix, F(1, 2))


def test_helly_hypothesis_violations():
    fs = [bvcode_from_poly(Poly.const(F(3, 4)), depth=10)] * 4
    with pytest.raises(HypothesisViolation) as exc:
        helly_select(fs, u=F(1, 2), v=0, depth=3)
    assert exc.value.which == "u"
    with pytest.raises(HypothesisViolation) as exc:
        helly_select([bvcode_from_poly(Poly.x(), depth=10)], u=1, v=F(1, 2), depth=3)
    assert exc.value.which == "v"


def test_helly_equals_composed_reduction():
    fs = [
        bvcode_from_poly(Poly.const(F(n, 32)), depth=12)
        for n in [3, 3, 3, 17, 3, 3, 9, 3, 3, 3]
    ]
    inst = hst_to_bw_instance(fs, u=1, v=0, depth=4)
    bwc = bw_product_select(list(inst.points), 6)
    manual = helly_postprocess(fs, inst, bwc)
    auto = helly_select(fs, u=1, v=0, depth=4)
    assert manual == auto


def test_helly_determinism():
    fs = [bvcode_from_poly(Poly.const(F(k % 3, 4)), depth=10) for k in range(9)]
    assert helly_select(fs, 1, 0, 3) == helly_select(fs, 1, 0, 3)


def test_bw_to_hst_constant_codes():
    codes = bw_to_hst_instance([F(1, 2), F(1, 4)])
    assert all(c.v == 0 for c in codes)
    assert bvcode_norm_l1(codes[0], 6).contains(F(1, 2))
    assert bvcode_norm_l1(codes[1], 6).contains(F(1, 4))


def test_round_trip_encloses_limit_point():
    xs = FinSeq(tuple([F(1, 4)] * 20 + [F(7, 8)] * 4))
    codes = bw_to_hst_instance(xs, depth=12)
    res = helly_select(codes, u=1, v=0, depth=5)
    ni = bvcode_norm_l1(res.limit, res.limit.depth)
    sc = bw_select(xs, depth=5)
    # the pipeline and the scalar selector agree on the dominant cluster
    assert ni.lo - F(1, 32) <= sc.candidate <= ni.hi + F(1, 32)
    assert ni.contains(F(1, 4))


def test_hst_to_bw_constant_stream():
    fs = [bvcode_from_poly(Poly.const(F(1, 5)), depth=10)] * 6
    inst = hst_to_bw_instance(fs, u=1, v=0, depth=3)
    assert len(set(inst.points)) == 1  # constant family, constant stream
