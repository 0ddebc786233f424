"""Command-line entry point.

Subcommands: geometry, fibration, verify, search-spread, all.
Reports go to stdout (JSON or text); progress logs go to stderr.
Exit codes: 0 = all checks passed, 1 = some verification failed,
2 = usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cache as geocache
from .errors import OvoidlabError, SizeGuard
from .fibration import (common_tangent_spread, find_regular_spread_in_complex,
                        singer_context, t_orbit_fibration)
from .gfield import ExtFieldCtx
from .ovoids import elliptic_quadric, tits_ovoid, tangent_lines
from .symplectic import polarity_from_ovoid
from .verify import (verify_lemma5, verify_main_theorem, verify_proposition1,
                     verify_radical_and_corollary3, verify_segre)

SUITES = ("prop1", "lemma5", "main", "codes", "segre")


def default_cache_dir() -> Path | None:
    env = os.environ.get("OVOIDLAB_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ovoidlab"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ovoidlab",
        description="Finite-geometry workbench for PG(3,q), W(q), ovoidal "
                    "fibrations and their GF(2) incidence codes (q = 2^n).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, required=True,
                        help="extension degree, q = 2^n")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--cache-dir", type=Path, default=None,
                        help="geometry cache directory "
                             "(default: $OVOIDLAB_CACHE or ~/.cache/ovoidlab)")
        sp.add_argument("--no-cache", action="store_true",
                        help="build cold, never touch the cache")
        sp.add_argument("--force", action="store_true",
                        help="override the desk-scale size guard")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for sampled modes and search ordering")
        sp.add_argument("--threads", type=int, default=0,
                        help="worker cap (0 = available parallelism); "
                             "output is independent of this value")

    sp = sub.add_parser("geometry", help="build and cache PG(3,q) tables")
    common(sp)
    sp.add_argument("--export-json", action="store_true",
                    help="dump the full JSON mirror of the cache")

    sp = sub.add_parser("fibration",
                        help="Singer T-orbit fibration and its spread")
    common(sp)

    sp = sub.add_parser("verify", help="run theorem verification suites")
    common(sp)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")

    sp = sub.add_parser("search-spread",
                        help="search for a regular spread inside a tangent "
                             "complex")
    common(sp)
    sp.add_argument("--ovoid", choices=("elliptic", "tits"),
                    default="elliptic")
    sp.add_argument("--budget", type=int, default=10 ** 6,
                    help="search node budget (NotFound is not a disproof)")

    sp = sub.add_parser("all", help="geometry + fibration + all suites")
    common(sp)
    return p


def _load_geometry(args):
    cache_dir = None
    if not args.no_cache:
        cache_dir = args.cache_dir if args.cache_dir else default_cache_dir()
    return geocache.load_or_build(args.n, cache_dir, force=args.force)


def _emit(doc, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        _emit_text(doc)


def _emit_text(doc, indent: str = "") -> None:
    if isinstance(doc, list):
        for item in doc:
            _emit_text(item, indent)
        return
    for key, val in doc.items():
        if isinstance(val, dict):
            print(f"{indent}{key}:")
            _emit_text(val, indent + "  ")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{indent}{key}:")
            _emit_text(val, indent + "  ")
        else:
            print(f"{indent}{key}: {val}")


def _geometry_summary(g) -> dict:
    return {
        "q": g.q,
        "n": g.ctx.n,
        "modulus": g.ctx.modulus,
        "generator": g.ctx.generator,
        "points": len(g.points),
        "lines": len(g.lines),
        "planes": len(g.planes),
    }


def _fibration_doc(g, fib, spread) -> dict:
    return {
        "q": g.q,
        "ovoids": [list(ov.pts) for ov in fib.members],
        "spread": list(spread.lines),
    }


def _run_suites(args, g, suites) -> list[dict]:
    ext = ExtFieldCtx.build(args.n)
    sc = singer_context(g, ext)
    fib = t_orbit_fibration(sc)
    reports = []
    for name in suites:
        if name == "prop1":
            rep = verify_proposition1(fib, g)
        elif name == "lemma5":
            rep = verify_lemma5(sc)
        elif name == "main":
            rep = verify_main_theorem(fib, g)
        elif name == "codes":
            form = polarity_from_ovoid(fib.members[0], g)
            rep = verify_radical_and_corollary3(form, sc)
        elif name == "segre":
            rep = verify_segre(elliptic_quadric(g), g)
        else:  # pragma: no cover - argparse restricts choices
            raise ValueError(name)
        reports.append(rep.to_dict())
    return reports


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "budget", 1) <= 0:
        print("error: --budget must be > 0", file=sys.stderr)
        return 2

    try:
        g = _load_geometry(args)
    except SizeGuard as exc:
        print(f"error: {exc} (use --force to override)", file=sys.stderr)
        return 2
    except OvoidlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "geometry":
            if args.export_json:
                print(geocache.export_geometry_json(g))
            else:
                _emit(_geometry_summary(g), args.format)
            return 0

        if args.command == "fibration":
            ext = ExtFieldCtx.build(args.n)
            sc = singer_context(g, ext)
            fib = t_orbit_fibration(sc)
            spread = common_tangent_spread(fib, g)
            _emit(_fibration_doc(g, fib, spread), args.format)
            return 0

        if args.command == "verify":
            suites = SUITES if args.suite == "all" else (args.suite,)
            reports = _run_suites(args, g, suites)
            _emit(reports, args.format)
            return 0 if all(r["pass"] for r in reports) else 1

        if args.command == "search-spread":
            theta = (tits_ovoid(g) if args.ovoid == "tits"
                     else elliptic_quadric(g))
            tl = tangent_lines(theta, g)

            def progress(nodes):
                print(f"search-spread: {nodes} nodes", file=sys.stderr)

            spread, nodes = find_regular_spread_in_complex(
                tl, g, budget=args.budget, progress=progress)
            _emit({"q": g.q, "ovoid": args.ovoid,
                   "found": spread is not None,
                   "spread": list(spread) if spread else [],
                   "nodes": nodes}, args.format)
            return 0

        if args.command == "all":
            ext = ExtFieldCtx.build(args.n)
            sc = singer_context(g, ext)
            fib = t_orbit_fibration(sc)
            spread = common_tangent_spread(fib, g)
            reports = _run_suites(args, g, SUITES)
            _emit({"geometry": _geometry_summary(g),
                   "fibration": _fibration_doc(g, fib, spread),
                   "reports": reports}, args.format)
            return 0 if all(r["pass"] for r in reports) else 1
    except OvoidlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2  # pragma: no cover - unreachable


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
