"""Input/output: the algebra document format, the fixture catalog, reports.

Document grammar (UTF-8 text, one key per line, ``#`` starts a comment):

    schema_version: 1
    name: so3
    dimension: 3
    bracket: 1 2 3 1        # [b_1, b_2] = 1 * b_3   (i j k value, i < j)
    bracket: 2 3 1 1
    bracket: 3 1 2 1        # i > j is rejected; write the i < j half only
    expected_verdict: lifts_as_dirac_only
    expected_height: 1
    note: free text

Values are exact rationals ("p" or "p/q"); float literals are rejected.
The antisymmetric completion is implied.  Parsing validates index ranges and
the Jacobi identity, naming the violating triples on failure.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .blowup_geometry import OrbitRankReport
from .classify import ClassificationVerdict, HeightSpectrum
from .errors import DomainError, ParseError
from .liealg import Covector, LieAlgebra
from .poisson_spinor import (
    LineOrderReport,
    LiftVerdict,
    OrderCertificate,
    PolyBivector,
    coordinate_ring,
)
from .rings import Polynomial, PolyRing, format_rational, parse_rational

SCHEMA_VERSION = 1

_METADATA_KEYS = ("expected_verdict", "expected_height", "note")


@dataclass(frozen=True)
class AlgebraDocument:
    """Parsed algebra document: sparse i<j brackets plus optional metadata."""

    name: str
    dim: int
    brackets: tuple[tuple[int, int, int, Fraction], ...]
    metadata: Mapping[str, str]
    schema_version: int = SCHEMA_VERSION

    def to_algebra(self) -> LieAlgebra:
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i, j, k, value in self.brackets:
            table.setdefault((i, j), {})[k] = value
        return LieAlgebra(self.dim, table, name=self.name).validate()


def parse_document(text: str) -> AlgebraDocument:
    name = None
    dim = None
    schema = None
    brackets: list[tuple[int, int, int, Fraction]] = []
    bracket_lines: dict[tuple[int, int, int], int] = {}
    metadata: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "schema_version":
            schema = _parse_int(value, lineno, "schema_version")
        elif key == "name":
            name = value
        elif key == "dimension":
            dim = _parse_int(value, lineno, "dimension")
            if dim < 1:
                raise ParseError("dimension must be positive", line=lineno)
        elif key == "bracket":
            fields = value.split()
            if len(fields) != 4:
                raise ParseError(
                    "bracket needs four fields: i j k value", line=lineno
                )
            i = _parse_int(fields[0], lineno, "i")
            j = _parse_int(fields[1], lineno, "j")
            k = _parse_int(fields[2], lineno, "k")
            try:
                coeff = parse_rational(fields[3])
            except ParseError as exc:
                raise ParseError(str(exc), line=lineno) from None
            if (i, j, k) in bracket_lines:
                raise ParseError(
                    f"duplicate bracket entry ({i},{j},{k}); first on line "
                    f"{bracket_lines[(i, j, k)]}",
                    line=lineno,
                )
            bracket_lines[(i, j, k)] = lineno
            brackets.append((i, j, k, coeff))
        elif key in _METADATA_KEYS:
            metadata[key] = value
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)
    if dim is None:
        raise ParseError("missing required key 'dimension'")
    if schema is None:
        raise ParseError("missing required key 'schema_version'")
    if schema != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {schema}")
    for i, j, k, _ in brackets:
        lineno = bracket_lines[(i, j, k)]
        if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
            raise ParseError(
                f"bracket indices ({i},{j},{k}) out of range 1..{dim}", line=lineno
            )
        if i >= j:
            raise ParseError(
                f"bracket requires i < j, got ({i},{j}); the other half is implied",
                line=lineno,
            )
    return AlgebraDocument(
        name=name or "anonymous",
        dim=dim,
        brackets=tuple(brackets),
        metadata=dict(sorted(metadata.items())),
    )


def _parse_int(token: str, lineno: int, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", token.strip()):
        raise ParseError(f"{what} must be an integer, got {token!r}", line=lineno)
    return int(token)


def parse_algebra(text: str) -> LieAlgebra:
    """Parse and fully validate (antisymmetry and Jacobi) an algebra document."""
    return parse_document(text).to_algebra()


def serialize_algebra(L: LieAlgebra, metadata: Mapping[str, str] | None = None) -> str:
    lines = [
        f"schema_version: {SCHEMA_VERSION}",
        f"name: {L.name or 'anonymous'}",
        f"dimension: {L.dim}",
    ]
    for (i, j), vec in sorted(L._pairs.items()):
        for k, value in enumerate(vec, start=1):
            if value:
                lines.append(f"bracket: {i} {j} {k} {format_rational(value)}")
    for key, value in sorted((metadata or {}).items()):
        if key not in _METADATA_KEYS:
            raise DomainError(f"unknown metadata key {key!r}")
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# -- catalog --------------------------------------------------------------------


def so3() -> LieAlgebra:
    return LieAlgebra(
        3,
        {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}},
        name="so3",
    )


def sl2() -> LieAlgebra:
    # basis with xi wedge d(xi) = (-xi_1^2 - xi_2^2 + xi_3^2) theta_123
    return LieAlgebra(
        3,
        {(1, 2): {3: -1}, (2, 3): {1: 1}, (1, 3): {2: -1}},
        name="sl2",
    )


def heis3() -> LieAlgebra:
    return LieAlgebra(3, {(1, 2): {3: 1}}, name="heis3")


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"abelian{n}")


def diagonal_affine(n: int) -> LieAlgebra:
    """R x| R^n with the first basis vector acting as the identity on the rest."""
    return LieAlgebra(
        n + 1,
        {(1, 1 + i): {1 + i: 1} for i in range(1, n + 1)},
        name=f"diagonal_affine{n}",
    )


SCALED_SO3_RING = coordinate_ring(3, base=("y1", "y2"))
SCALED_SO3_BLOWN = (1, 2, 3)


def scaled_so3_bundle(f: Polynomial | str) -> PolyBivector:
    """Bundle fixture: fibres scaled by a polynomial f(y1, y2).

    The bracket [e_i, e_j] = f * sum_k eps_ijk e_k induces on the dual the
    bivector with pi_12 = f x3, pi_23 = f x1, pi_31 = f x2, carried over the
    base variables (y1, y2) which every fibre chart leaves fixed.
    """
    ring = SCALED_SO3_RING
    if isinstance(f, str):
        base_ring = PolyRing(("y1", "y2"))
        f = base_ring.parse(f)
    if f.vars == ("y1", "y2"):
        lift = f.substitute([ring.named("y1"), ring.named("y2")])
    else:
        lift = ring.coerce(f)
    x1, x2, x3 = (ring.variable(i) for i in (1, 2, 3))
    return PolyBivector(
        ring,
        {(1, 2): lift * x3, (2, 3): lift * x1, (1, 3): -(lift * x2)},
    )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    kind: str  # "algebra" | "bundle"
    expected_verdict: str
    expected_height: int | None
    note: str


_ABELIAN_RANGE = range(1, 7)
_DIAGONAL_RANGE = range(1, 6)

_NAME_PATTERNS = [
    (re.compile(r"abelian(\d+)\Z"), lambda n: abelian(n)),
    (re.compile(r"diagonal_affine(\d+)\Z"), lambda n: diagonal_affine(n)),
]

MAX_CATALOG_DIM = 12


def catalog_entries() -> list[CatalogEntry]:
    entries = [
        CatalogEntry("so3", 3, "algebra", "lifts_as_dirac_only", 1, "compact simple"),
        CatalogEntry("sl2", 3, "algebra", "does_not_lift", None, "split simple"),
        CatalogEntry("heis3", 3, "algebra", "does_not_lift", None, "Heisenberg"),
    ]
    for n in _ABELIAN_RANGE:
        entries.append(
            CatalogEntry(
                f"abelian{n}", n, "algebra", "lifts_as_poisson", 0, "abelian"
            )
        )
    for n in _DIAGONAL_RANGE:
        entries.append(
            CatalogEntry(
                f"diagonal_affine{n}",
                n + 1,
                "algebra",
                "lifts_as_poisson",
                0,
                "R acting diagonally on R^n",
            )
        )
    entries.append(
        CatalogEntry(
            "scaled_so3_bundle",
            5,
            "bundle",
            "depends_on_f",
            None,
            "so(3) fibres scaled by f(y1,y2); use --f",
        )
    )
    return sorted(entries, key=lambda e: (e.dim, e.name))


def catalog_algebra(name: str) -> LieAlgebra:
    """Resolve a catalog name to a validated algebra; parametrized names
    (abelianN, diagonal_affineN) accept any N with resulting dim <= 12."""
    fixed = {"so3": so3, "sl2": sl2, "heis3": heis3}
    if name in fixed:
        return fixed[name]().validate()
    for pattern, builder in _NAME_PATTERNS:
        match = pattern.match(name)
        if match:
            n = int(match.group(1))
            if n < 1:
                raise DomainError(f"catalog parameter must be positive in {name!r}")
            algebra = builder(n)
            if algebra.dim > MAX_CATALOG_DIM:
                raise DomainError(
                    f"{name!r} has dimension {algebra.dim} > {MAX_CATALOG_DIM}"
                )
            return algebra.validate()
    raise DomainError(f"unknown catalog name {name!r}")


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisResult:
    name: str
    dim: int
    seed: int
    samples: int
    verdict: LiftVerdict
    spectrum: HeightSpectrum
    orbit_report: OrbitRankReport
    line_report: LineOrderReport


def _covector_json(xi: Covector) -> list[str]:
    return [format_rational(v) for v in xi]


def classification_to_dict(c: ClassificationVerdict) -> dict:
    out: dict = {"kind": c.kind, "constant_height": c.constant_height}
    if c.param is not None:
        out["param"] = c.param
    if c.witnesses is not None:
        out["witnesses"] = [_covector_json(w) for w in c.witnesses]
        out["witness_heights"] = list(c.witness_heights)
    return out


def certificate_to_dict(cert: OrderCertificate, ring: PolyRing) -> dict:
    names = tuple("d" + v for v in ring.vars)
    out: dict = {
        "chart": cert.chart,
        "order": cert.order,
        "status": cert.status,
        "leading_form": cert.leading.render(names),
    }
    if cert.certificate:
        out["certificate"] = cert.certificate
    if cert.witness_point is not None:
        out["witness_point"] = [format_rational(v) for v in cert.witness_point]
    if cert.note:
        out["note"] = cert.note
    return out


def verdict_to_dict(verdict: LiftVerdict) -> dict:
    out: dict = {
        "kind": verdict.kind,
        "constant_height": verdict.height,
        "classification": classification_to_dict(verdict.classification),
        "charts": {
            str(chart): certificate_to_dict(cert, cert.leading.ring)
            for chart, cert in sorted(verdict.certificates.items())
        },
        "cross_checks": {
            "expected_order": verdict.cross_checks["expected_order"],
            "charts": {
                str(chart): dict(entry)
                for chart, entry in verdict.cross_checks["charts"].items()
            },
            "spinor_agreement": verdict.cross_checks["spinor_agreement"],
        },
    }
    if verdict.witnesses is not None:
        out["witnesses"] = [_covector_json(w) for w in verdict.witnesses]
        out["witness_heights"] = list(verdict.witness_heights)
    return out


def spectrum_to_dict(spectrum: HeightSpectrum) -> dict:
    return {
        "samples": spectrum.samples,
        "heights": {
            str(k): {
                "count": spectrum.counts[k],
                "witness": _covector_json(spectrum.witnesses[k]),
            }
            for k in sorted(spectrum.counts)
        },
    }


def orbit_report_to_dict(report: OrbitRankReport) -> dict:
    return {
        "samples": report.samples,
        "mismatches": len(report.mismatches),
        "heights_observed": list(report.heights),
        "constant_height": report.constant_height,
    }


def line_report_to_dict(report: LineOrderReport) -> dict:
    return {
        "samples": report.samples,
        "mismatches": len(report.mismatches),
    }


def analysis_to_dict(result: AnalysisResult) -> dict:
    return {
        "command": "analyze",
        "algebra": result.name,
        "dimension": result.dim,
        "seed": result.seed,
        "samples": result.samples,
        "verdict": verdict_to_dict(result.verdict),
        "spectrum": spectrum_to_dict(result.spectrum),
        "orbit_crosscheck": orbit_report_to_dict(result.orbit_report),
        "line_order_crosscheck": line_report_to_dict(result.line_report),
    }


_VERDICT_TEXT = {
    "lifts_as_poisson": "lifts as a Poisson structure",
    "lifts_as_dirac_only": "lifts as a Dirac structure only (not Poisson)",
    "does_not_lift": "does not lift",
}


def render_human(result: AnalysisResult) -> str:
    verdict = result.verdict
    lines = [
        f"algebra: {result.name} (dim {result.dim})",
        f"seed: {result.seed}   samples: {result.samples}",
        f"classification: {verdict.classification.kind}"
        + (
            f" (constant height {verdict.classification.constant_height})"
            if verdict.classification.constant_height is not None
            else ""
        ),
        f"verdict: {_VERDICT_TEXT[verdict.kind]}"
        + (f" [k = {verdict.height}]" if verdict.height is not None else ""),
    ]
    if verdict.witnesses is not None:
        w1, w2 = verdict.witnesses
        h1, h2 = verdict.witness_heights
        lines.append(
            f"witnesses: {_render_covector(w1)} has height {h1}; "
            f"{_render_covector(w2)} has height {h2}"
        )
    lines.append("spinor vanishing orders along the divisor:")
    for chart, cert in sorted(verdict.certificates.items()):
        entry = f"  chart {chart}: order {cert.order}, {cert.status}"
        if cert.certificate:
            entry += f" ({cert.certificate})"
        if cert.witness_point is not None:
            entry += f" (vanishes at {_render_point(cert.witness_point)})"
        if cert.note:
            entry += f" [{cert.note}]"
        lines.append(entry)
    lines.append(f"spinor agreement: {verdict.cross_checks['spinor_agreement']}")
    spectrum = result.spectrum
    spec_text = ", ".join(
        f"{k}: {spectrum.counts[k]} samples" for k in sorted(spectrum.counts)
    )
    lines.append(f"height spectrum ({spectrum.samples} samples): {{{spec_text}}}")
    orbit = result.orbit_report
    lines.append(
        f"orbit/rank identities: {orbit.samples} samples, "
        f"{len(orbit.mismatches)} mismatches, heights {set(orbit.heights)}"
        + ("" if orbit.constant_height else " (non-constant)")
    )
    line = result.line_report
    lines.append(
        f"line-order identity: {line.samples} samples, {len(line.mismatches)} mismatches"
    )
    return "\n".join(lines) + "\n"


def _render_covector(xi: Covector) -> str:
    return "(" + ", ".join(format_rational(v) for v in xi) + ")"


def _render_point(point) -> str:
    return "(" + ", ".join(format_rational(v) for v in point) + ")"


def emit_report(result: AnalysisResult, fmt: str = "human") -> str:
    """Deterministic report: identical inputs and seeds give identical bytes."""
    if fmt == "machine":
        return json.dumps(analysis_to_dict(result), sort_keys=True, indent=2) + "\n"
    return render_human(result)
