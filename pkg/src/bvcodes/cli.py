"""Batch front door: build, validate, transform and select over code files.

Every numeric line prints the exact rational (num/den) together with a
labeled decimal rendering; nothing is ever shown rounded-only.  Exit codes:
0 success, 1 validation failure, 2 hypothesis violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .codes import bvcode_norm_l1
from .dual import Pi01Gadget, cantor_sum, decode_pi01, jordan_poly
from .errors import BVCodesError, HypothesisViolation, RateViolation, VariationViolation
from .mollify import mollify_code, smooth_indicator
from .poly import integral_abs_info, poly_variation
from .rationals import parse_rational, to_decimal_str
from .selection import FinSeq, bw_select, bw_to_hst_instance, helly_select, hst_to_bw_instance
from .serialize import (
    code_to_json,
    mollify_cert_to_json,
    rate_cert_to_json,
    read_codes,
    read_points,
    read_witness_table,
    replay_provenance,
    selection_cert_to_json,
    write_code,
    write_codes,
    write_points,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_HYPOTHESIS = 2
EXIT_IO = 3


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator} (dec {to_decimal_str(x)})"


def _rat(text: str) -> Fraction:
    return parse_rational(text)


def cmd_validate(args) -> int:
    try:
        codes = read_codes(args.path)
    except (RateViolation, VariationViolation) as exc:
        print(f"INVALID: {exc}")
        return EXIT_VALIDATION
    for idx, code in enumerate(codes):
        label = f"[{idx}] " if len(codes) > 1 else ""
        for k in range(code.depth):
            diff = code.prefix[k] - code.prefix[k + 1]
            info = integral_abs_info(diff, Fraction(0), Fraction(1))
            print(f"{label}rate k={k}: ||p_k - p_k+1||_1 = {_fmt(info.value)} <= {_fmt(Fraction(1, 1 << k))}")
        for k, p in enumerate(code.prefix):
            info = integral_abs_info(p.derivative(), Fraction(0), Fraction(1))
            print(f"{label}variation k={k}: int|p_k'| = {_fmt(info.value)} <= v = {_fmt(code.v)}")
        if code.provenance is not None and args.replay:
            replay = replay_provenance(code.provenance)
            if replay is None:
                print(f"{label}provenance: unknown kind, not replayed")
            elif replay.prefix == code.prefix and replay.v == code.v:
                print(f"{label}provenance: replayed, bit-identical")
            else:
                print(f"{label}provenance: REPLAY MISMATCH")
                return EXIT_VALIDATION
        print(f"{label}OK, depth {code.depth}, v = {_fmt(code.v)}")
    return EXIT_OK


def cmd_indicator(args) -> int:
    res = smooth_indicator(
        _rat(args.a), _rat(args.b), _rat(args.eps), args.m, depth=args.depth
    )
    write_code(args.out, res.code)
    print(f"variation = {_fmt(res.variation)}")
    print(f"L1 distance to the sharp indicator = {_fmt(res.distance_to_indicator)}")
    print(f"wrote code (depth {res.code.depth}, v = {_fmt(res.code.v)}) to {args.out}")
    return EXIT_OK


def cmd_mollify(args) -> int:
    code = read_codes(args.path)[0]
    out, cert = mollify_code(code, _rat(args.eps), m=args.m, k_out=args.k_out)
    write_code(args.out, out)
    with open(args.out + ".cert.json", "w") as fh:
        json.dump(mollify_cert_to_json(cert), fh, indent=1)
        fh.write("\n")
    print(f"kernel: {cert.kernel}")
    print(f"certified bound 2*eps*v = {_fmt(cert.bound)}")
    print(f"exact instance error    = {_fmt(cert.exact_error)}  (bound holds: {cert.bound_holds})")
    print(f"new variation bound     = {_fmt(cert.new_v)}")
    print(f"smoothed variation      = {_fmt(cert.mollified_variation)}")
    print(f"wrote code (depth {out.depth}) to {args.out} and certificate to {args.out}.cert.json")
    return EXIT_OK


def cmd_norm(args) -> int:
    code = read_codes(args.path)[0]
    ni = bvcode_norm_l1(code, args.k)
    print(f"||f||_1 in [{_fmt(ni.lo)}, {_fmt(ni.hi)}]  (level {args.k})")
    return EXIT_OK


def cmd_variation(args) -> int:
    code = read_codes(args.path)[0]
    deep = code.deepest()
    info = integral_abs_info(deep.derivative(), Fraction(0), Fraction(1))
    print(f"variation of the depth-{code.depth} representative = {_fmt(info.value)}")
    print(f"stored bound v = {_fmt(code.v)}")
    print("note: the representative's variation, not the L1-class variation")
    return EXIT_OK


def cmd_helly(args) -> int:
    fs = []
    for path in args.paths:
        fs.extend(read_codes(path))
    res = helly_select(fs, _rat(args.u), _rat(args.v), args.depth, m=args.m)
    with open(args.out_prefix + ".cert.json", "w") as fh:
        json.dump(rate_cert_to_json(res.certificate), fh, indent=1)
        fh.write("\n")
    write_code(args.out_prefix + ".limit.json", res.limit)
    print(f"selected indices: {list(res.certificate.g)}")
    for lv in res.certificate.levels:
        print(f"level {lv.n}: max pairwise L1 = {_fmt(lv.value)} <= {_fmt(lv.bound)}")
    print(f"limit code depth {res.limit.depth}, v = {_fmt(res.limit.v)}")
    print(f"wrote {args.out_prefix}.cert.json and {args.out_prefix}.limit.json")
    return EXIT_OK


def cmd_bw(args) -> int:
    pts = read_points(args.path)
    cert = bw_select(FinSeq(tuple(pts)), args.depth)
    doc = selection_cert_to_json(cert)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    print(f"candidate = {_fmt(cert.candidate)}")
    for lv in cert.levels:
        print(f"level {lv.n}: index {lv.index}, |x - candidate| = {_fmt(lv.value)} <= {_fmt(lv.bound)}")
    print(f"exhausted_at = {cert.exhausted_at}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.direction == "bw-to-hst":
        pts = read_points(args.path)
        codes = bw_to_hst_instance(FinSeq(tuple(pts)))
        write_codes(args.out, codes)
        print(f"wrote {len(codes)} constant codes (v = 0) to {args.out}")
        return EXIT_OK
    fs = read_codes(args.path)
    inst = hst_to_bw_instance(fs, _rat(args.u), _rat(args.v), args.depth, m=args.m)
    doc = {
        "points": [[list(map(str, (c.numerator, c.denominator))) for c in p.coords] for p in inst.points],
        "scales": [[str(e.numerator), str(e.denominator)] for e in inst.scales],
        "depth": inst.depth,
        "stored_depth": inst.stored_depth,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    print(f"wrote {len(inst.points)} product points of dimension {inst.points[0].dim} to {args.out}")
    return EXIT_OK


def cmd_sample(args) -> int:
    code = read_codes(args.path)[0]
    deep = code.deepest()
    with open(args.out, "w") as fh:
        fh.write("x,y\n")
        for i in range(args.grid + 1):
            x = Fraction(i, args.grid)
            fh.write(f"{to_decimal_str(x)},{to_decimal_str(deep(x))}\n")
    slack = code.tail_slack()
    print(f"sampled the depth-{code.depth} representative on {args.grid + 1} points -> {args.out}")
    print(f"L1 slack to the coded limit: {_fmt(slack)} (code semantics, not pointwise)")
    return EXIT_OK


def cmd_demo_reversal(args) -> int:
    table = read_witness_table(args.path)
    n_count = args.n_count if args.n_count is not None else (max(table) + 1 if table else 1)
    code = cantor_sum(Pi01Gadget.from_table(table), n_count, args.depth)
    deep = code.deepest()
    position = -(deep(Fraction(1)) - deep(Fraction(0)))
    print(f"endpoint decode position = {_fmt(position)}")
    print(f"truncation slack = {_fmt(code.provenance['truncation_slack'])}")
    for n in range(n_count):
        verdict = decode_pi01(code, n, args.depth)
        print(f"statement {n}: {verdict}")
    return EXIT_OK


def cmd_jordan(args) -> int:
    code = read_codes(args.path)[0]
    deep = code.deepest()
    pieces = jordan_poly(deep)
    for piece in pieces:
        print(f"[{_fmt(piece.lo)}, {_fmt(piece.hi)}]: {piece.direction}")
    print(f"variation of the representative = {_fmt(poly_variation(deep))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bvcodes",
        description="exact rational-polynomial codes for bounded-variation functions",
    )
    ap.add_argument("--version", action="version", version=f"bvcodes {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="re-check a code file's invariants exactly")
    p.add_argument("path")
    p.add_argument("--replay", action="store_true", help="also replay recorded provenance")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("indicator", help="smoothed interval indicator code")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("eps")
    p.add_argument("m", type=int)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_indicator)

    p = sub.add_parser("mollify", help="mollify a code with certified error")
    p.add_argument("path")
    p.add_argument("eps")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--k-out", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_mollify)

    p = sub.add_parser("norm", help="L1-norm enclosure at a prefix level")
    p.add_argument("path")
    p.add_argument("k", type=int)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("variation", help="exact variation of the deepest entry")
    p.add_argument("path")
    p.set_defaults(fn=cmd_variation)

    p = sub.add_parser("helly", help="select an L1-convergent subsequence of codes")
    p.add_argument("paths", nargs="+")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(fn=cmd_helly)

    p = sub.add_parser("bw", help="limit-point selection on a points file")
    p.add_argument("path")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bw)

    p = sub.add_parser("reduce", help="materialize a reduction direction")
    p.add_argument("direction", choices=["bw-to-hst", "hst-to-bw"])
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--u", default="1")
    p.add_argument("--v", default="1")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("sample", help="CSV samples of the deepest entry")
    p.add_argument("path")
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("demo-reversal", help="endpoint decoding of a witness table")
    p.add_argument("path")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--n-count", type=int, default=None)
    p.set_defaults(fn=cmd_demo_reversal)

    p = sub.add_parser("jordan", help="monotone decomposition of the deepest entry")
    p.add_argument("path")
    p.set_defaults(fn=cmd_jordan)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BVCodesError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
