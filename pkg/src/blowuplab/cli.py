"""Command-line front end.

Commands:
    analyze    full pipeline: classification, lift verdict, spinor orders,
               height spectrum, orbit/rank and line-order cross-checks
    spinor     exact pulled-back spinor and order certificate per chart
    crosscheck per-sample identity suites (line orders, orbit ranks)
    catalog    list built-in fixtures

Exit codes: 0 ok, 1 parse error, 2 Jacobi violation, 3 internal disagreement
(independent computations conflict, which signals a bug, not a mathematical
outcome), 64 usage error.  A fixed seed gives byte-identical machine output;
the BLOWUPLAB_SEED environment variable overrides the default seed 1729.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .blowup_geometry import orbit_rank_crosscheck
from .classify import sample_height_spectrum
from .errors import (
    BlowupLabError,
    DomainError,
    InternalError,
    JacobiError,
    ParseError,
    UsageError,
    WitnessSearchError,
)
from .liealg import LieAlgebra
from .model_io import (
    AnalysisResult,
    SCALED_SO3_BLOWN,
    catalog_algebra,
    catalog_entries,
    certificate_to_dict,
    emit_report,
    parse_algebra,
    scaled_so3_bundle,
)
from .poisson_spinor import (
    blowup_pullback,
    check_line_orders,
    lift_verdict,
    spinor,
    vanishing_order,
)
from .sampling import DEFAULT_SEED

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_JACOBI = 2
EXIT_INTERNAL = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("BLOWUPLAB_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BLOWUPLAB_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blowuplab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, charts=False):
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--catalog", help="built-in fixture name")
        source.add_argument("--input", help="path to an algebra document")
        p.add_argument("--seed", type=int, default=None, help="sampling seed")
        p.add_argument("--samples", type=int, default=200, help="sample count")
        p.add_argument(
            "--format", choices=("human", "machine"), default="human", dest="fmt"
        )
        if charts:
            p.add_argument("--chart", type=int, default=None, help="chart index")

    analyze = sub.add_parser("analyze", help="full liftability analysis")
    add_common(analyze)

    spinor_cmd = sub.add_parser("spinor", help="pulled-back spinor per chart")
    add_common(spinor_cmd, charts=True)
    spinor_cmd.add_argument(
        "--f", default=None, help="scaling polynomial in y1,y2 (scaled_so3_bundle only)"
    )

    crosscheck = sub.add_parser("crosscheck", help="per-sample identity suites")
    add_common(crosscheck)

    catalog = sub.add_parser("catalog", help="list built-in fixtures")
    catalog.add_argument(
        "--format", choices=("human", "machine"), default="human", dest="fmt"
    )
    catalog.add_argument("--filter", default=None, help="filter, e.g. dim=3")
    return parser


def _resolve_algebra(args) -> LieAlgebra:
    if args.catalog:
        if args.catalog == "scaled_so3_bundle":
            raise UsageError(
                "scaled_so3_bundle is a bundle fixture; use the 'spinor' command"
            )
        try:
            return catalog_algebra(args.catalog)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    try:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from None
    return parse_algebra(text)


def _check_samples(args):
    if args.samples < 1:
        raise UsageError("--samples must be a positive integer")


def cmd_analyze(args) -> int:
    _check_samples(args)
    seed = args.seed if args.seed is not None else _default_seed()
    algebra = _resolve_algebra(args)
    verdict = lift_verdict(algebra, seed=seed, samples=args.samples)
    spectrum = sample_height_spectrum(algebra, args.samples, seed=seed)
    orbit_report = orbit_rank_crosscheck(algebra, args.samples, seed=seed)
    line_report = check_line_orders(algebra, args.samples, seed=seed)
    result = AnalysisResult(
        name=algebra.name or "anonymous",
        dim=algebra.dim,
        seed=seed,
        samples=args.samples,
        verdict=verdict,
        spectrum=spectrum,
        orbit_report=orbit_report,
        line_report=line_report,
    )
    sys.stdout.write(emit_report(result, args.fmt))
    if orbit_report.mismatches or line_report.mismatches:
        raise InternalError(
            "per-sample identity suites reported mismatches; see the report"
        )
    return EXIT_OK


def cmd_spinor(args) -> int:
    _check_samples(args)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.catalog == "scaled_so3_bundle":
        pi = scaled_so3_bundle(args.f if args.f is not None else "1")
        blown = SCALED_SO3_BLOWN
        name = f"scaled_so3_bundle[f = {args.f if args.f is not None else '1'}]"
    else:
        if args.f is not None:
            raise UsageError("--f applies only to --catalog scaled_so3_bundle")
        from .poisson_spinor import linear_poisson

        algebra = _resolve_algebra(args)
        pi = linear_poisson(algebra)
        blown = tuple(range(1, algebra.dim + 1))
        name = algebra.name or "anonymous"
    phi = spinor(pi)
    charts = [args.chart] if args.chart is not None else list(blown)
    for chart in charts:
        if chart not in blown:
            raise UsageError(f"--chart must be one of {blown}")
    payload = {"command": "spinor", "input": name, "seed": seed, "charts": {}}
    human_lines = [f"spinor analysis: {name}"]
    for chart in charts:
        cf = blowup_pullback(phi, chart, blown)
        cert = vanishing_order(cf, seed=seed, samples=args.samples)
        payload["charts"][str(chart)] = {
            "pullback": cf.render(),
            "certificate": certificate_to_dict(cert, cf.ring),
        }
        names = tuple("d" + v for v in cf.ring.vars)
        human_lines.append(f"chart {chart}:")
        human_lines.append(f"  pullback: {cf.render()}")
        human_lines.append(f"  order: {cert.order}, {cert.status}")
        human_lines.append(f"  leading form: {cert.leading.render(names)}")
        if cert.certificate:
            human_lines.append(f"  certificate: {cert.certificate}")
        if cert.witness_point is not None:
            point = ", ".join(str(v) for v in cert.witness_point)
            human_lines.append(f"  leading form vanishes at: ({point})")
        if cert.note:
            human_lines.append(f"  note: {cert.note}")
    if args.fmt == "machine":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(human_lines) + "\n")
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    _check_samples(args)
    seed = args.seed if args.seed is not None else _default_seed()
    algebra = _resolve_algebra(args)
    line_report = check_line_orders(algebra, args.samples, seed=seed)
    orbit_report = orbit_rank_crosscheck(algebra, args.samples, seed=seed)
    if args.fmt == "machine":
        payload = {
            "command": "crosscheck",
            "algebra": algebra.name or "anonymous",
            "seed": seed,
            "samples": args.samples,
            "line_orders": {
                "mismatches": len(line_report.mismatches),
                "records": [
                    {
                        "xi": [str(v) for v in r.xi],
                        "chart": r.chart,
                        "order": r.order,
                        "expected": r.expected,
                    }
                    for r in line_report.records
                ],
            },
            "orbit_ranks": {
                "mismatches": len(orbit_report.mismatches),
                "heights_observed": list(orbit_report.heights),
                "constant_height": orbit_report.constant_height,
                "records": [
                    {
                        "v": [str(x) for x in r.v],
                        "height": r.height,
                        "type": r.element_type,
                        "class": r.cartan_class,
                        "orbit_dim": r.orbit_dim,
                        "radial": r.radial,
                        "distribution_rank": r.distribution_rank,
                        "ok": r.ok,
                    }
                    for r in orbit_report.records
                ],
            },
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = [
            f"crosscheck: {algebra.name or 'anonymous'} "
            f"(seed {seed}, {args.samples} samples)",
            "line-order identity (order == dim - 1 - height):",
        ]
        for r in line_report.records:
            mark = "ok" if r.ok else "MISMATCH"
            xi = ", ".join(str(v) for v in r.xi)
            lines.append(
                f"  xi=({xi}) chart {r.chart}: order {r.order}, "
                f"expected {r.expected}  [{mark}]"
            )
        lines.append("orbit/rank identities:")
        for r in orbit_report.records:
            mark = "ok" if r.ok else "MISMATCH: " + "; ".join(r.failures)
            v = ", ".join(str(x) for x in r.v)
            lines.append(
                f"  v=({v}) height {r.height} type {r.element_type} "
                f"class {r.cartan_class} orbit {r.orbit_dim} "
                f"radial {str(r.radial).lower()} rank {r.distribution_rank}  [{mark}]"
            )
        constancy = (
            "constant" if orbit_report.constant_height else "globally non-constant"
        )
        status = (
            "pointwise-consistent"
            if not (line_report.mismatches or orbit_report.mismatches)
            else "VIOLATIONS FOUND"
        )
        lines.append(
            f"summary: {status}, heights {set(orbit_report.heights)} ({constancy})"
        )
        sys.stdout.write("\n".join(lines) + "\n")
    if line_report.mismatches or orbit_report.mismatches:
        raise InternalError("identity suite reported mismatches")
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = catalog_entries()
    if args.filter:
        if "=" not in args.filter:
            raise UsageError("--filter expects key=value, e.g. dim=3")
        key, _, value = args.filter.partition("=")
        if key.strip() != "dim":
            raise UsageError(f"unsupported filter key {key.strip()!r}")
        try:
            wanted = int(value)
        except ValueError:
            raise UsageError("--filter dim= expects an integer") from None
        entries = [e for e in entries if e.dim == wanted]
    if args.fmt == "machine":
        payload = {
            "command": "catalog",
            "entries": [
                {
                    "name": e.name,
                    "dim": e.dim,
                    "kind": e.kind,
                    "expected_verdict": e.expected_verdict,
                    "expected_height": e.expected_height,
                    "note": e.note,
                }
                for e in entries
            ],
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = ["catalog:"]
        for e in entries:
            height = f", height {e.expected_height}" if e.expected_height is not None else ""
            lines.append(
                f"  {e.name}  (dim {e.dim}, {e.kind}): {e.expected_verdict}{height} -- {e.note}"
            )
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


_HANDLERS = {
    "analyze": cmd_analyze,
    "spinor": cmd_spinor,
    "crosscheck": cmd_crosscheck,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except JacobiError as exc:
        sys.stderr.write(f"invalid algebra: {exc}\n")
        for triple, defect in exc.violations:
            sys.stderr.write(f"  triple {triple}: defect {tuple(str(d) for d in defect)}\n")
        return EXIT_JACOBI
    except (InternalError, WitnessSearchError) as exc:
        sys.stderr.write(f"internal disagreement: {exc}\n")
        return EXIT_INTERNAL
    except BlowupLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
