"""Command-line entry point: ``zccs generate | verify | pmepr``.

Exit codes: 0 success, 1 property violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .construct import INDEXINGS, ConstructionParams, ParameterError, build_code_set
from .files import FileFormatError, read_codeset, write_codeset
from .verify import (DEFAULT_OVERSAMPLE, certify, classify, iter_code_correlations,
                     measured_pmeprs, row_pmepr_bounds)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _perms(text: str) -> tuple:
    return tuple(_ints(part) for part in text.split(";"))


def _params(args) -> ConstructionParams:
    sizes = _ints(args.paths)
    q = args.q if args.q is not None else args.p
    common = dict(pmepr_term=args.pmepr_term, strict_gamma=args.strict_gamma, indexing=args.indexing)
    if args.seed is not None:
        if args.gamma or args.theta or args.perm:
            raise UsageError("--seed draws gamma, theta and the layout; do not combine with them")
        return ConstructionParams.random(args.p, q, sizes, args.r, seed=args.seed, **common)
    return ConstructionParams(
        args.p, q, sizes, args.r,
        perms=_perms(args.perm) if args.perm else None,
        gamma=_ints(args.gamma) if args.gamma else None,
        theta=args.theta, **common)


def cmd_generate(args) -> int:
    params = _params(args)
    if args.signs and params.q != 2:
        raise UsageError("--signs needs q == 2")
    cs = build_code_set(params)
    if args.out:
        fmt = args.format or ("csv" if str(args.out).lower().endswith(".csv") else "json")
        write_codeset(cs, args.out, fmt, signs=args.signs, complex_values=args.complex)
        print(f"wrote {args.out}", file=sys.stderr)
    print(tuple(params.shape))
    return EXIT_OK


def _claimed_z(cs, override):
    if override is not None:
        return override
    shape = cs.claimed_shape()
    return None if shape is None else shape[2]


def _write_profile(cs, path):
    N = cs.N
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["s", "t"] + [f"tau_{t}" for t in range(-(N - 1), N)])
        for s, ts, vals in iter_code_correlations(cs.codes, cs.q):
            mags = np.abs(vals)
            for t, row in zip(ts, mags):
                w.writerow([s, int(t)] + [f"{v:.12g}" for v in row])
                if t != s:
                    w.writerow([int(t), s] + [f"{v:.12g}" for v in row[::-1]])


def cmd_verify(args) -> int:
    cs = read_codeset(args.infile)
    report = classify(cs)
    Z = _claimed_z(cs, args.z)
    if Z is not None and not 1 <= Z <= cs.N:
        raise UsageError(f"claimed Z={Z} outside [1, {cs.N}]")
    ok, witness = certify(report, Z if Z is not None else report.typeII_Z)
    print(report.summary())
    claimed = (cs.K, cs.M, Z, cs.N)
    if ok:
        print(f"certified: type-II {claimed}" if Z is not None else "certified: tau=0 conditions hold")
    else:
        print(f"violation: s={witness.s} t={witness.t} tau={witness.tau} |value|={witness.magnitude:.12g}")
    if args.report:
        doc = dict(report.as_dict(), claimed=list(claimed) if Z is not None else None, certified=ok,
                   violation=None if ok else witness.as_dict())
        Path(args.report).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    if args.profile_out:
        _write_profile(cs, args.profile_out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_pmepr(args) -> int:
    cs = read_codeset(args.infile)
    if args.oversample < 4:
        raise UsageError("--oversample must be at least 4")
    kinds = [k for k, flag in (("row", args.rows), ("column", args.columns)) if flag] or ["row", "column"]
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    maxima = {}
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["kind", "code", "index", "bound", "measured"])
        for kind in kinds:
            arr = cs.codes if kind == "row" else cs.codes.transpose(0, 2, 1)
            flat = np.ascontiguousarray(arr).reshape(-1, arr.shape[2])
            bounds = row_pmepr_bounds(flat, cs.q)
            measured = measured_pmeprs(flat, cs.q, args.oversample)
            per = arr.shape[1]
            for i, (b, m) in enumerate(zip(bounds, measured)):
                w.writerow([kind, i // per, i % per, f"{b:.12g}", f"{m:.12g}"])
            maxima[kind] = (float(bounds.max()), float(measured.max()))
    finally:
        if args.out:
            out.close()
    summary = "; ".join(f"max {k} bound {b:.6g}, max {k} measured {m:.6g}" for k, (b, m) in maxima.items())
    print(("# " if not args.out else "") + summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zccs", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"zccs {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a code set")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--q", type=int, help="phase modulus, a multiple of p (default p)")
    g.add_argument("--paths", required=True, help="path sizes, e.g. 2,2")
    g.add_argument("--r", type=int, default=0, help="number of isolated vertices")
    g.add_argument("--gamma", help="linear coefficients, one per path variable")
    g.add_argument("--theta", type=int, default=0)
    g.add_argument("--perm", help="vertex order of each path, paths separated by ';', e.g. 1,0;2,3")
    g.add_argument("--seed", type=int, help="draw gamma, theta and the vertex layout at random")
    g.add_argument("--pmepr-term", action="store_true", help="add the column PMEPR reducing term")
    g.add_argument("--strict-gamma", action="store_true", help="restrict gamma and theta to Z_p")
    g.add_argument("--indexing", choices=INDEXINGS, default="standard")
    g.add_argument("--out", help="output file")
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--signs", action="store_true", help="write +/- instead of 0/1 (CSV, q = 2)")
    g.add_argument("--complex", action="store_true", help="also export re/im values")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="classify a code-set file and check its claimed Z")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--z", type=int, help="override the claimed zone width")
    v.add_argument("--report", help="write the report as JSON")
    v.add_argument("--profile-out", help="write |correlation| per code pair and shift as CSV")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("pmepr", help="PMEPR bound and measured PMEPR per row/column")
    m.add_argument("--in", dest="infile", required=True)
    m.add_argument("--oversample", type=int, default=DEFAULT_OVERSAMPLE)
    m.add_argument("--rows", action="store_true")
    m.add_argument("--columns", action="store_true")
    m.add_argument("--out", help="CSV output (default stdout)")
    m.set_defaults(func=cmd_pmepr)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, FileFormatError, UsageError, ValueError) as exc:
        print(f"zccs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
