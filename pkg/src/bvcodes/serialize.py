"""JSON interchange for codes, certificates and point files.

Integers are serialized as decimal strings (arbitrary precision), a
rational as a ["num", "den"] pair, a polynomial as its coefficient list
lowest degree first.  A code file is

    { "polys": [[["num","den"], ...], ...], "v": ["num","den"], "depth": K }

optionally with a "provenance" block recording the construction recipe.
Loading always re-validates, so a tampered file fails with the exact
violated inequality; writing then reading reproduces a bit-identical code.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .codes import BVCode, bvcode_new
from .mollify import MollifyCertificate
from .poly import Poly
from .selection import CertLevel, RateCertificate, SelectionCertificate


def frac_to_json(x: Fraction) -> list[str]:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def frac_from_json(obj) -> Fraction:
    num, den = obj
    return Fraction(int(num), int(den))


def poly_to_json(p: Poly) -> list[list[str]]:
    return [frac_to_json(c) for c in p.coeffs]


def poly_from_json(obj) -> Poly:
    return Poly(tuple(frac_from_json(c) for c in obj))


def _prov_to_json(value: Any) -> Any:
    if isinstance(value, Fraction):
        return {"rat": frac_to_json(value)}
    if isinstance(value, (list, tuple)):
        return [_prov_to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: _prov_to_json(v) for k, v in value.items()}
    return value


def _prov_from_json(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value.keys()) == {"rat"}:
            return frac_from_json(value["rat"])
        return {k: _prov_from_json(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_prov_from_json(v) for v in value]
    return value


def code_to_json(code: BVCode) -> dict:
    doc = {
        "polys": [poly_to_json(p) for p in code.prefix],
        "v": frac_to_json(code.v),
        "depth": code.depth,
    }
    if code.provenance is not None:
        doc["provenance"] = _prov_to_json(code.provenance)
    return doc


def code_from_json(doc: dict) -> BVCode:
    """Parse and re-validate; raises RateViolation / VariationViolation on
    tampered data."""
    prefix = [poly_from_json(p) for p in doc["polys"]]
    v = frac_from_json(doc["v"])
    if doc.get("depth") != len(prefix) - 1:
        raise ValueError("depth field disagrees with the stored prefix")
    prov = _prov_from_json(doc["provenance"]) if "provenance" in doc else None
    return bvcode_new(prefix, v, provenance=prov)


def write_code(path: str, code: BVCode) -> None:
    with open(path, "w") as fh:
        json.dump(code_to_json(code), fh, indent=1)
        fh.write("\n")


def read_codes(path: str) -> list[BVCode]:
    """Read a code file holding one code object or an array of them."""
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, list):
        return [code_from_json(d) for d in doc]
    return [code_from_json(doc)]


def write_codes(path: str, codes: list[BVCode]) -> None:
    with open(path, "w") as fh:
        json.dump([code_to_json(c) for c in codes], fh, indent=1)
        fh.write("\n")


def points_to_json(points) -> list:
    return [frac_to_json(Fraction(x)) for x in points]


def points_from_json(doc) -> list[Fraction]:
    return [frac_from_json(x) for x in doc]


def read_points(path: str) -> list[Fraction]:
    with open(path) as fh:
        return points_from_json(json.load(fh))


def write_points(path: str, points) -> None:
    with open(path, "w") as fh:
        json.dump(points_to_json(points), fh)
        fh.write("\n")


def selection_cert_to_json(cert: SelectionCertificate) -> dict:
    if isinstance(cert.candidate, tuple):
        candidate = [frac_to_json(c) for c in cert.candidate]
    else:
        candidate = frac_to_json(cert.candidate)
    return {
        "g": list(cert.g),
        "candidate": candidate,
        "levels": [
            {
                "n": lv.n,
                "index": lv.index,
                "value": frac_to_json(lv.value),
                "bound": frac_to_json(lv.bound),
            }
            for lv in cert.levels
        ],
        "exhausted_at": cert.exhausted_at,
        "truncation_slack": frac_to_json(cert.truncation_slack),
    }


def selection_cert_from_json(doc: dict) -> SelectionCertificate:
    cand = doc["candidate"]
    if cand and isinstance(cand[0], list):
        candidate: Fraction | tuple = tuple(frac_from_json(c) for c in cand)
    else:
        candidate = frac_from_json(cand)
    return SelectionCertificate(
        g=tuple(doc["g"]),
        candidate=candidate,
        levels=tuple(
            CertLevel(
                n=lv["n"],
                index=lv["index"],
                value=frac_from_json(lv["value"]),
                bound=frac_from_json(lv["bound"]),
            )
            for lv in doc["levels"]
        ),
        exhausted_at=doc["exhausted_at"],
        truncation_slack=frac_from_json(doc["truncation_slack"]),
    )


def rate_cert_to_json(cert: RateCertificate) -> dict:
    return {
        "g": list(cert.g),
        "v": frac_to_json(cert.v),
        "stored_depth": cert.stored_depth,
        "levels": [
            {"n": lv.n, "bound": frac_to_json(lv.bound), "value": frac_to_json(lv.value)}
            for lv in cert.levels
        ],
        "exhausted_at": cert.exhausted_at,
    }


def mollify_cert_to_json(cert: MollifyCertificate) -> dict:
    return {
        "eps": frac_to_json(cert.eps),
        "v": frac_to_json(cert.v),
        "bound": frac_to_json(cert.bound),
        "exact_error": frac_to_json(cert.exact_error),
        "bound_holds": cert.bound_holds,
        "new_v": frac_to_json(cert.new_v),
        "mollified_variation": frac_to_json(cert.mollified_variation),
        "projection_error": frac_to_json(cert.projection_error),
        "kernel": cert.kernel,
    }


def read_witness_table(path: str) -> dict[int, int | None]:
    """Witness tables: a JSON list of {"n": int, "witness_at": int-or-null}."""
    with open(path) as fh:
        doc = json.load(fh)
    table: dict[int, int | None] = {}
    for row in doc:
        table[int(row["n"])] = None if row["witness_at"] is None else int(row["witness_at"])
    return table


def replay_provenance(prov: dict) -> BVCode | None:
    """Re-run a recorded construction recipe; None for unknown kinds."""
    kind = prov.get("kind")
    if kind == "indicator":
        from .mollify import smooth_indicator

        return smooth_indicator(
            prov["a"], prov["b"], prov["eps"], prov["m"],
            depth=prov["depth"], max_degree=prov["max_degree"],
        ).code
    if kind == "step":
        from .codes import bvcode_step

        return bvcode_step(
            prov["breaks"], prov["values"], prov["eps"], prov["m"],
            depth=prov["depth"], max_degree=prov["max_degree"],
        )
    if kind == "cantor-gadget":
        from .dual import Pi01Gadget, cantor_sum

        table = {n: w for n, w in enumerate(prov["witnesses"])}
        return cantor_sum(
            Pi01Gadget.from_table(table), prov["n_count"], prov["depth"], prov["m"]
        )
    return None
