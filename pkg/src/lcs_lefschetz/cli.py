"""Command line front end.

Exit codes: 0 when every check passes, 1 when the mathematics says no
(validation failure, HLC fails, identity violated, table mismatch) and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
import time
from pathlib import Path

from . import report
from .exterior import FrameError
from .family import build_family, reproduce_tables
from .invariant import ModelError, load_model, save_model, validate
from .lefschetz import (
    DEFAULT_K_SWEEP,
    bigraded_harmonic,
    cohomology,
    duality_check,
    harmonic_space,
    hlc_verdict,
    jinvariant_harmonic,
    kahler_identity_suite,
    sl2_check,
)
from .scalar import ScalarParseError, format_scalar, parse_rational

log = logging.getLogger("lcs_lefschetz")

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2

SOLVABLE_NOTE = (
    "invariant-form cohomology equals manifold cohomology only for completely solvable groups "
    "(declared flag: {flag})"
)


class UsageError(Exception):
    pass


def _k_list(text: str) -> list:
    try:
        return [parse_rational(t) for t in text.split(",") if t.strip()]
    except ScalarParseError as exc:
        raise UsageError(f"bad --k value: {exc}") from exc


def _k_one(text: str):
    ks = _k_list(text)
    if len(ks) != 1:
        raise UsageError(f"expected a single rational for --k, got {text!r}")
    return ks[0]


def _bidegree(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"--bidegree expects p,q, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _model(args):
    if args.model and args.m is not None:
        raise UsageError("give either a model file or --m, not both")
    if args.m is not None:
        if args.m < 2:
            raise UsageError("--m must be at least 2")
        return build_family(args.m).model
    if not args.model:
        raise UsageError("a model file or --m is required")
    return load_model(args.model)


def _degrees(args, model) -> list[int]:
    if args.degree is None:
        return list(range(model.dim + 1))
    if not 0 <= args.degree <= model.dim:
        raise UsageError(f"--degree must lie in 0..{model.dim}")
    return [args.degree]


def _timed(label: str):
    class _T:
        def __enter__(self):
            self.t = time.perf_counter()

        def __exit__(self, *exc):
            log.info("%s: %.3fs", label, time.perf_counter() - self.t)

    return _T()


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    model = _model(args)
    rep = validate(model)
    res = rep.to_dict()
    res["completely_solvable"] = model.completely_solvable
    return report.document("validate", model, res, rep.passed)


def cmd_cohomology(args):
    model = _model(args)
    k = _k_one(args.k)
    spaces = []
    for j in _degrees(args, model):
        with _timed(f"cohomology j={j}"):
            c = cohomology(model, k, j)
        spaces.append(
            {
                "degree": j,
                "k": format_scalar(c.k),
                "dim": c.dimension,
                "kernel_dim": c.kernel_dim,
                "image_dim": c.image_dim,
                "representatives": [report.form_doc(model, f) for f in c.representatives],
            }
        )
    res = {"spaces": spaces, "assumption": SOLVABLE_NOTE.format(flag=str(model.completely_solvable).lower())}
    return report.document("cohomology", model, res, True)


def cmd_harmonic(args):
    model = _model(args)
    k = _k_one(args.k)
    spaces = []
    if args.bidegree:
        p, q = _bidegree(args.bidegree)
        hs = [bigraded_harmonic(model, k, p, q)]
    else:
        fn = jinvariant_harmonic if args.jinvariant else harmonic_space
        hs = []
        for j in _degrees(args, model):
            with _timed(f"harmonic j={j}"):
                hs.append(fn(model, k, j))
    for h in hs:
        spaces.append(
            {
                "label": h.label(),
                "flavor": h.flavor,
                "degree": h.degree,
                "bidegree": list(h.bidegree) if h.bidegree else None,
                "k": format_scalar(h.k),
                "dim": h.dimension,
                "basis": [report.form_doc(model, f) for f in h.basis],
            }
        )
    return report.document("harmonic", model, {"spaces": spaces}, True)


def cmd_hlc(args):
    model = _model(args)
    with _timed("hlc"):
        rep = hlc_verdict(model)
    maps = []
    for m in rep.maps:
        maps.append(
            {
                "degree": m.degree,
                "k": format_scalar(m.k),
                "power": m.power,
                "target_degree": m.target_degree,
                "target_k": format_scalar(m.target_k),
                "source_dim": len(m.source),
                "target_dim": len(m.target),
                "rank": m.rank,
                "iso": m.iso,
                "source_basis": [report.form_doc(model, f) for f in m.source],
                "target_basis": [report.form_doc(model, f) for f in m.target],
                "matrix": [[format_scalar(x) for x in row] for row in m.matrix],
                "kernel": [report.form_doc(model, f) for f in m.kernel],
            }
        )
    res = {
        "satisfied": rep.satisfied,
        "failing_degrees": rep.failing_degrees(),
        "maps": maps,
        "assumption": SOLVABLE_NOTE.format(flag=str(model.completely_solvable).lower()),
    }
    return report.document("hlc", model, res, rep.satisfied)


def cmd_identities(args):
    model = _model(args)
    ks = _k_list(args.k) if args.k else list(DEFAULT_K_SWEEP)
    degrees = _degrees(args, model)
    with _timed("identity suite"):
        rep = kahler_identity_suite(model, ks, degrees=degrees)
    res = {
        "k_values": [format_scalar(k) for k in rep.k_values],
        "degrees": degrees,
        "results": [r.to_dict() for r in rep.results],
    }
    return report.document("identities", model, res, rep.passed)


def cmd_sl2(args):
    model = _model(args)
    with _timed("sl2"):
        rep = sl2_check(model)
    res = {"checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in rep.checks]}
    return report.document("sl2", model, res, rep.passed)


def cmd_duality(args):
    model = _model(args)
    ks = _k_list(args.k) if args.k else list(DEFAULT_K_SWEEP)
    checks = []
    ok_all = True
    for k in ks:
        for j in _degrees(args, model):
            with _timed(f"duality k={k} j={j}"):
                rep = duality_check(model, k, j)
            ok_all &= rep.passed
            for name, ok, detail in rep.checks:
                checks.append({"k": format_scalar(k), "degree": j, "name": name, "passed": ok, "detail": detail})
    return report.document("duality", model, {"checks": checks}, ok_all)


def cmd_family(args):
    if args.m is None:
        raise UsageError("family needs --m")
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    fam = build_family(args.m)
    rep = validate(fam.model)
    path = None
    if args.out:
        try:
            save_model(fam.model, args.out)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
        path = str(args.out)
    res = {
        "m": fam.m,
        "dim": fam.model.dim,
        "path": path,
        "weights": dict(zip(fam.model.coframe, fam.weights)),
        "validation_passed": rep.passed,
    }
    return report.document("family", fam.model, res, rep.passed)


def cmd_tables(args):
    ms = [args.m] if args.m is not None else [2, 3, 4]
    cells = []
    ok = True
    for m in ms:
        if m not in (2, 3, 4):
            raise UsageError("tables are available for m = 2, 3, 4")
        with _timed(f"tables m={m}"):
            rep = reproduce_tables(m)
        ok &= rep.passed
        cells += [c.to_dict() for c in rep.cells]
    return report.document("tables", None, {"cells": cells}, ok)


COMMANDS = {
    "validate": (cmd_validate, "check the LCaK structure of a model"),
    "cohomology": (cmd_cohomology, "twisted cohomology H^j_k with harmonic representatives"),
    "harmonic": (cmd_harmonic, "twisted harmonic spaces (plain, J-invariant or bigraded)"),
    "hlc": (cmd_hlc, "hard Lefschetz condition verdict"),
    "identities": (cmd_identities, "Kahler identity suite over a k sweep"),
    "sl2": (cmd_sl2, "sl(2) closure and hard Lefschetz on harmonic spaces"),
    "duality": (cmd_duality, "Hodge star and conjugation dualities"),
    "family": (cmd_family, "build the M_m model and optionally write it"),
    "tables": (cmd_tables, "recompute the M_m reference tables"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", nargs="?", help="model file (JSON)")
    common.add_argument("--m", type=int, help="use the built-in family model M_m instead of a file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path, help="write the report here (family: the model file)")
    common.add_argument("--verbose", action="store_true", help="per-step timing on stderr")

    parser = argparse.ArgumentParser(
        prog="lcs-lefschetz",
        description="Exact twisted cohomology and Lefschetz checks for left-invariant LCaK structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helptext)
        if name in ("cohomology", "harmonic"):
            p.add_argument("--k", default="0", help="twist parameter (exact rational, default 0)")
            p.add_argument("--degree", type=int)
        if name in ("identities", "duality"):
            p.add_argument("--k", help="comma separated twists (default -2,-1,-1/2,0,1/2,1,2)")
            p.add_argument("--degree", type=int)
        if name == "harmonic":
            p.add_argument("--bidegree", help="p,q for the bigraded space")
            p.add_argument("--jinvariant", action="store_true", help="J-invariant harmonic forms")
    return parser


def _fix_negative_k(argv: list[str]) -> list[str]:
    # argparse reads "--k -1/2" as two options; glue the value on
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--k" and i + 1 < len(argv) and re.match(r"^-\d", argv[i + 1]):
            out.append(f"--k={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_k(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    fn = COMMANDS[args.command][0]
    try:
        doc = fn(args)
    except (UsageError, ModelError, FrameError, ScalarParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_json(doc) if args.format == "json" else report.to_text(doc)
    if args.out and args.command != "family":
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if doc["passed"] else EXIT_FINDING


if __name__ == "__main__":
    sys.exit(main())
