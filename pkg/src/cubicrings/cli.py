"""Command-line surface.

Exit codes: 0 success, 1 verification failure, 2 usage problem, 3 outside the
exhaustive-search envelope.  All output is deterministic JSON (sorted keys);
censuses can additionally be written as CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .algebra import BranchCase, CubicAlgebra, make_algebra
from .config import RingConfig
from .duality import dual_report
from .errors import (
    ClassificationFailureError,
    ConfigError,
    CubicRingsError,
    EnvelopeError,
    UsageError,
)
from .families import FamilyDescriptor, make_family
from .ideals import census_precision, iso_classes, par_estimate
from .lattice import Lattice
from .overrings import (
    brute_force_overrings,
    compare_closed_vs_oracle,
    enumerate_overrings_closed,
)
from . import verify as verify_mod

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_ENVELOPE = 3


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_doc(arg: str) -> dict:
    path = Path(arg)
    try:
        if path.exists():
            return json.loads(path.read_text(encoding="utf-8"))
        return json.loads(arg)
    except json.JSONDecodeError as exc:
        raise UsageError(f"argument is neither a file nor valid JSON: {exc}") from exc


def _order_from_doc(doc: dict) -> Lattice:
    try:
        return Lattice.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad order document: {exc}") from exc


def _family_from_doc(doc: dict, prec: int | None, p_arg: int | None):
    p = doc.get("p", p_arg)
    if p is None:
        raise UsageError("descriptor document carries no p; pass --p")
    desc = FamilyDescriptor.from_json(doc, int(p))
    need = max(2 * desc.conductor() + 2, 8)
    cfg = RingConfig(int(p), prec or need)
    f = tuple(int(c) for c in doc["f"]) if "f" in doc else None
    alg = make_algebra(cfg, desc.case, f)
    return alg, desc


def cmd_mk_order(args) -> int:
    doc = _load_doc(args.family)
    alg, desc = _family_from_doc(doc, args.prec, args.p)
    lat = make_family(alg, desc)
    _dump(lat.to_json(), args.out)
    return EXIT_OK


def cmd_overrings(args) -> int:
    cfg = RingConfig(args.p, args.prec or max(2 * args.m + 2, 8))
    alg = make_algebra(cfg, BranchCase.from_token(args.case))
    if args.diff:
        diff = compare_closed_vs_oracle(alg, args.m)
        doc = {
            "summary": diff.summary(),
            "closed": diff.n_closed,
            "oracle": diff.n_oracle,
            "only_closed": [d.to_json() for d in diff.only_closed],
            "only_oracle": [l.to_json() for l in diff.only_oracle],
        }
        _dump(doc, args.out)
        return EXIT_OK if diff.ok else EXIT_VERIFY
    if args.oracle:
        lats = brute_force_overrings(alg, args.m)
        _dump([l.to_json() for l in lats], args.out)
    else:
        descs = enumerate_overrings_closed(alg, args.m)
        _dump([d.to_json() for d in descs], args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    lat = _order_from_doc(_load_doc(args.order))
    rep = dual_report(lat, closed_form=args.closed_form)
    _dump(rep.to_json(), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    from .classify import classification_report

    lat = _order_from_doc(_load_doc(args.order))
    _dump(classification_report(lat), args.out)
    return EXIT_OK


def cmd_ideal_classes(args) -> int:
    lat = _order_from_doc(_load_doc(args.order))
    census = iso_classes(lat, args.window)
    doc = census.to_json()
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["class", "pivots", "lattices", "tags"])
            for idx, cl in enumerate(census.classes):
                writer.writerow(
                    [idx, " ".join(map(str, cl.rep.pivots())), cl.size, "|".join(cl.tags)]
                )
    _dump(doc, args.out)
    return EXIT_OK if not census.unexpected else EXIT_VERIFY


def cmd_par_estimate(args) -> int:
    doc = _load_doc(args.family)
    primes = [int(x) for x in args.primes.split(",") if x]
    if not primes:
        raise UsageError("empty prime list")
    desc = FamilyDescriptor.from_json(doc, min(primes))
    est = par_estimate(desc, primes)
    _dump(est.to_json(), args.out)
    return EXIT_OK


_VERIFY_NEEDS = {
    "thm-overrings": ("case", "p", "m"),
    "procedure": ("case", "p", "m"),
    "edim": ("case", "p", "m"),
    "duals": ("case", "p", "m"),
    "gorenstein": ("case", "p", "m"),
    "ideal-classes": ("case", "p"),
    "par-growth": (),
    "foundations": (),
}


def cmd_verify(args) -> int:
    name = args.criterion
    if name == "thm-overrings":
        ok, report = verify_mod.verify_overrings(args.case, args.p, args.m, args.prec)
    elif name == "procedure":
        ok, report = verify_mod.verify_procedure(args.case, args.p, args.m, args.prec)
    elif name == "edim":
        ok, report = verify_mod.verify_edim(args.case, args.p, args.m, args.prec)
    elif name == "duals":
        ok, report = verify_mod.verify_duals(args.case, args.p, args.m, args.prec)
    elif name == "gorenstein":
        ok, report = verify_mod.verify_gorenstein(args.case, args.p, args.m, args.prec)
    elif name == "ideal-classes":
        ok, report = verify_mod.verify_ideal_classes(
            args.case, args.p, args.base, args.window
        )
    elif name == "par-growth":
        primes = [int(x) for x in args.primes.split(",") if x]
        ok, report = verify_mod.verify_par_growth(primes)
    elif name == "foundations":
        ok, report = verify_mod.verify_foundations(args.p or 5, args.seed)
    else:
        raise UsageError(f"unknown criterion {name!r}")
    report["ok"] = ok
    _dump(report, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cubicrings",
        description="Cubic rings over a truncated discrete valuation ring: "
        "constructions, enumerations, duals, censuses.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, case=False, m=False, window=False, primes=False):
        if case:
            sp.add_argument("--case", required=True, choices=verify_mod.CASES)
            sp.add_argument("--p", type=int, required=True)
        if m:
            sp.add_argument("--m", type=int, required=True)
        if window:
            sp.add_argument("--window", type=int, default=None)
        if primes:
            sp.add_argument("--primes", default="5,7,11,13")
        sp.add_argument("--prec", type=int, default=None)
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("mk-order", help="build an order from a family descriptor")
    sp.add_argument("--family", required=True, help="descriptor JSON (inline or path)")
    sp.add_argument("--p", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_mk_order)

    sp = sub.add_parser("overrings", help="enumerate over-rings of A_m")
    common(sp, case=True, m=True)
    sp.add_argument("--oracle", action="store_true", help="emit the brute-force lattices")
    sp.add_argument("--diff", action="store_true", help="run both routes and diff them")
    sp.set_defaults(func=cmd_overrings)

    sp = sub.add_parser("dual", help="dual lattice report for an order")
    sp.add_argument("--order", required=True)
    sp.add_argument("--closed-form", action="store_true", default=True)
    sp.add_argument("--no-closed-form", dest="closed_form", action="store_false")
    common(sp)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("classify", help="locality, edim and singularity name")
    sp.add_argument("--order", required=True)
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("ideal-classes", help="unit-orbit census of window ideals")
    sp.add_argument("--order", required=True)
    sp.add_argument("--csv", default=None)
    common(sp, window=True)
    sp.set_defaults(func=cmd_ideal_classes)

    sp = sub.add_parser("par-estimate", help="class-count growth across primes")
    sp.add_argument("--family", required=True)
    common(sp, primes=True)
    sp.set_defaults(func=cmd_par_estimate)

    sp = sub.add_parser("verify", help="run one named verification")
    sp.add_argument("criterion", choices=sorted(_VERIFY_NEEDS))
    sp.add_argument("--case", choices=verify_mod.CASES)
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--base", choices=["A1", "A2"], default="A1")
    sp.add_argument("--window", type=int, default=None)
    sp.add_argument("--primes", default="5,7,11,13")
    sp.add_argument("--seed", type=int, default=20240817)
    sp.add_argument("--prec", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify":
        missing = [
            f"--{name}"
            for name in _VERIFY_NEEDS[args.criterion]
            if getattr(args, name) is None
        ]
        if missing:
            ap.error(f"verify {args.criterion} needs {', '.join(missing)}")
    try:
        return args.func(args)
    except EnvelopeError as exc:
        print(f"envelope: {exc}", file=sys.stderr)
        return EXIT_ENVELOPE
    except (UsageError, ConfigError) as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassificationFailureError as exc:
        print(f"classification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except CubicRingsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
