import json
from fractions import Fraction as F

import pytest

from bvcodes.codes import bvcode_from_poly
from bvcodes.dual import Pi01Gadget, cantor_sum
from bvcodes.errors import RateViolation, VariationViolation
from bvcodes.mollify import smooth_indicator
from bvcodes.poly import Poly
from bvcodes.rationals import parse_rational, simplest_in_interval, to_decimal_str
from bvcodes.selection import bw_select
from bvcodes.serialize import (
    code_from_json,
    code_to_json,
    frac_from_json,
    frac_to_json,
    replay_provenance,
    selection_cert_from_json,
    selection_cert_to_json,
)


def test_fraction_roundtrip():
    x = F(-123456789123456789, 1 << 40)
    assert frac_from_json(frac_to_json(x)) == x
    assert frac_to_json(F(1, 2)) == ["1", "2"]


def test_code_roundtrip_bit_identical():
    code = bvcode_from_poly(Poly.of(F(1, 3), F(-2, 7), 1), depth=5)
    doc = json.loads(json.dumps(code_to_json(code)))
    back = code_from_json(doc)
    assert back.prefix == code.prefix
    assert back.v == code.v
    assert code_to_json(back) == code_to_json(code)


def test_tampered_prefix_rejected():
    code = bvcode_from_poly(Poly.x(), depth=4)
    doc = code_to_json(code)
    doc["polys"][2] = [["9", "1"], ["3", "1"]]  # inject a far-away entry
    with pytest.raises(RateViolation):
        code_from_json(doc)


def test_lowered_v_rejected():
    code = bvcode_from_poly(Poly.x(), depth=3)
    doc = code_to_json(code)
    doc["v"] = ["1", "2"]  # below int|p'| = 1
    with pytest.raises(VariationViolation) as exc:
        code_from_json(doc)
    assert exc.value.level == 0


def test_depth_field_checked():
    code = bvcode_from_poly(Poly.x(), depth=3)
    doc = code_to_json(code)
    doc["depth"] = 7
    with pytest.raises(ValueError):
        code_from_json(doc)


def test_provenance_roundtrip_and_replay():
    ind = smooth_indicator(F(1, 4), F(3, 4), F(1, 10), m=1, depth=2)
    doc = json.loads(json.dumps(code_to_json(ind.code)))
    back = code_from_json(doc)
    assert back.provenance == ind.code.provenance
    replay = replay_provenance(back.provenance)
    assert replay.prefix == ind.code.prefix and replay.v == ind.code.v


def test_gadget_provenance_replay():
    code = cantor_sum(Pi01Gadget.from_table({0: 1, 1: None}), 2, 4)
    doc = json.loads(json.dumps(code_to_json(code)))
    back = code_from_json(doc)
    replay = replay_provenance(back.provenance)
    assert replay.prefix == code.prefix


def test_selection_cert_roundtrip():
    cert = bw_select([F(1, 3), F(1, 3), F(2, 3), F(1, 3)], depth=4)
    doc = json.loads(json.dumps(selection_cert_to_json(cert)))
    assert set(doc.keys()) >= {"g", "candidate", "levels", "exhausted_at"}
    assert all(set(lv.keys()) >= {"n", "bound", "value"} for lv in doc["levels"])
    back = selection_cert_from_json(doc)
    assert back == cert


def test_decimal_rendering():
    assert to_decimal_str(F(1, 3)) == "0.333333333333"
    assert to_decimal_str(F(2, 3)) == "0.666666666667"
    assert to_decimal_str(F(-1, 8), places=4) == "-0.1250"
    assert to_decimal_str(F(5)) == "5.000000000000"


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("0.1") == F(1, 10)
    assert parse_rational("-7") == -7


def test_simplest_in_interval():
    assert simplest_in_interval(F(1, 4), F(1, 2)) == F(1, 3)
    assert simplest_in_interval(F(0), F(1, 3)) == F(1, 4)
    assert simplest_in_interval(F(-1, 2), F(1, 2)) == 0
    x = simplest_in_interval(F(415, 93) - F(1, 10**12), F(415, 93) + F(1, 10**12))
    assert x == F(415, 93)
