"""Command-line entry point.

    thickcentre lattice --fixture A3 --out dot
    thickcentre centre --quiver q.json --sublattice chain:1,3
    thickcentre verify all --fixture A2 --window 3

Reports are JSON documents tagged with ``schema``; the exit status is 0 exactly
when every check in the report is consistent. Mayer-Vietoris failures on
non-commuting pairs are expected and recorded as witnesses, not as errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, frames
from .fixtures import FIXTURES, Setting, setting, setting_from_file
from .sweeps import (CheckResult, centre_report, frame_functoriality, select_sublattice, sweep_excision,
                     sweep_loc_products, sweep_localization, sweep_mayer_vietoris, sweep_nested,
                     sweep_noether, sweep_tensor)
from .thicklat import ResourceLimit, nc_oracle

SCHEMA = "thickcentre.report/1"
VERIFY_CHOICES = ("loc", "mv", "excision", "noether", "tensor", "all")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--quiver", metavar="FILE", help="quiver spec file (JSON)")
    src.add_argument("--fixture", choices=sorted(FIXTURES), help="built-in quiver")
    common.add_argument("--field", type=int, metavar="P", help="prime field (default: file value or 101)")
    common.add_argument("--sublattice", default="full", metavar="SEL",
                        help="full | chain:<ids> | ideals | interval:<lo>,<hi> (default: full)")
    common.add_argument("--out", choices=("json", "dot"), default="json")
    common.add_argument("--window", type=int, default=3, metavar="N",
                        help="check Hom degrees -N..N (default: 3)")
    common.add_argument("--cap", type=int, default=1 << 20, metavar="N",
                        help="maximum number of closure computations")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    ap = argparse.ArgumentParser(prog="thickcentre", description="Thick subcategory lattices and their centres.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("lattice", parents=[common], help="enumerate the thick subcategory lattice")
    sub.add_parser("centre", parents=[common], help="centre of a sublattice, its points and supports")
    v = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    v.add_argument("which", choices=VERIFY_CHOICES)
    return ap


def load(args) -> Setting:
    if args.fixture:
        return setting(args.fixture, args.field if args.field is not None else 101, args.cap)
    return setting_from_file(args.quiver, args.field, args.cap)


def quiver_summary(s: Setting) -> dict:
    q = s.quiver
    return {"name": q.name, "vertices": q.n, "arrows": [[a + 1, b + 1] for a, b in q.arrows]}


def lattice_summary(s: Setting) -> dict:
    lat = s.lattice
    out = {
        "elements": lat.n,
        "labels": lat.labels,
        "members": [[s.names[i] for i in sorted(m)] for m in lat.members],
        "covers": [list(c) for c in sorted(lat.covers())],
        "distributive": frames.is_distributive(lat),
    }
    if s.quiver.is_linear() and s.supplied is None:
        out["noncrossing_count"] = len(nc_oracle(s.table))
    return out


def lattice_check(s: Setting) -> CheckResult:
    lat = s.lattice
    ok = lat.check_axioms()
    details = {}
    if s.quiver.is_linear() and s.supplied is None:
        expected = set(nc_oracle(s.table))
        ok = ok and expected == set(lat.members)
        details["noncrossing_count"] = len(expected)
    return CheckResult("thick_lattice_enumeration", ok, lat.n, [], details)


def centre_section(s: Setting, selector: str) -> tuple[dict, CheckResult]:
    lat = s.lattice
    sub = select_sublattice(s, selector)
    rep = centre_report(s, sub)
    section = {
        "selector": selector,
        "sublattice": [lat.labels[k] for k in sub],
        "centre": [lat.labels[k] for k in rep.central],
        "centre_ids": rep.central,
        "points": [lat.labels[k] for k in rep.points],
        "supports": {x: [lat.labels[k] for k in ks] for x, ks in rep.supports.items()},
        "commuting_matrix": [[int(s.commuting(a, b)) for b in sub] for a in sub],
    }
    flags = {k: getattr(rep, k) for k in ("sublattice", "join_closed", "distributive", "spatial",
                                         "support_bijection", "identities", "adjoint_sound")}
    check = CheckResult("centre_is_spatial_frame", rep.passed, len(sub),
                        [k for k, v in flags.items() if not v], flags)
    return section, check


def run_checks(s: Setting, which: str, window: tuple[int, int], clock: dict) -> list[CheckResult]:
    checks: list[CheckResult] = []

    def timed(label, fn, *a):
        t = time.perf_counter()
        res = fn(*a)
        clock[label] = round(time.perf_counter() - t, 3)
        return res

    if which in ("loc", "all"):
        checks.append(timed("loc", sweep_localization, s, window))
        checks.append(timed("nested", sweep_nested, s))
    if which in ("mv", "all"):
        eq, cen, _ = timed("mv", sweep_mayer_vietoris, s, window)
        checks += [eq, cen]
    if which in ("excision", "all"):
        checks.append(timed("excision", sweep_excision, s))
    if which in ("noether", "all"):
        checks.append(timed("noether", sweep_noether, s, window))
        checks.append(timed("loc_products", sweep_loc_products, s))
    if which in ("tensor", "all"):
        checks.append(timed("tensor", sweep_tensor, s))
    if which == "all":
        checks.append(timed("frame_maps", frame_functoriality, s))
    return checks


def run(args) -> tuple[dict, str | None, bool]:
    """Build the report (and DOT text if requested); returns (report, dot, consistent)."""
    clock: dict[str, float] = {}
    t0 = time.perf_counter()
    s = load(args)
    report: dict = {"schema": SCHEMA, "command": args.command, "quiver": quiver_summary(s), "field": s.p,
                    "indecomposables": list(s.names)}
    t = time.perf_counter()
    lat = s.lattice
    clock["lattice"] = round(time.perf_counter() - t, 3)
    report["lattice"] = lattice_summary(s)
    checks = [lattice_check(s)]
    highlight: list[int] = []
    if args.command in ("centre", "verify"):
        t = time.perf_counter()
        section, check = centre_section(s, args.sublattice)
        clock["centre"] = round(time.perf_counter() - t, 3)
        report["centre"] = section
        checks.append(check)
        highlight = section["centre_ids"]
    if args.command == "verify":
        report["which"] = args.which
        report["window"] = [-args.window, args.window]
        checks += run_checks(s, args.which, (-args.window, args.window), clock)
    report["checks"] = [c.as_dict() for c in checks]
    consistent = all(c.passed for c in checks)
    report["consistent"] = consistent
    if args.timing:
        clock["total"] = round(time.perf_counter() - t0, 3)
        report["timing"] = clock
    dot = frames.to_dot(lat, s.quiver.name or "lattice", highlight) if args.out == "dot" else None
    return report, dot, consistent


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.window < 0 or args.cap <= 0:
        print("thickcentre: --window must be >= 0 and --cap positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, dot, consistent = run(args)
    except ResourceLimit as exc:
        print(f"thickcentre: resource cap reached: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, ValueError, KeyError) as exc:
        print(f"thickcentre: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if dot is not None:
        sys.stdout.write(dot)
    else:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if consistent else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
