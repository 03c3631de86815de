"""Spinors of polynomial Poisson bivectors and their behaviour under blowup.

The graph of a bivector pi admits the mixed-degree spinor e^{i_pi} lambda
for a volume form lambda.  Pulling that spinor back through a blowup chart
and reading off the divisor-adic vanishing order decides liftability: the
lift exists precisely when the order is constant along the divisor, and it
is the graph of a bivector again precisely when that order is one less than
the number of blown directions.  Everything here is exact; the nonvanishing
of a leading form is either certified syntactically, falsified by an explicit
rational divisor point, or reported as undetermined, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .charts import BlowupChart
from .classify import ClassificationVerdict, classify_constant_height
from .errors import DisagreementError, DomainError, StructureError
from .exterior import GradedForm, GradedVector, exp_interior
from .liealg import Covector, LieAlgebra, as_covector, height
from .rings import Polynomial, PolyRing, Rational
from .sampling import DEFAULT_SEED, covector_stream, point_stream


@dataclass(frozen=True)
class PolyBivector:
    """Antisymmetric bivector field with polynomial coefficients; i<j stored."""

    ring: PolyRing
    entries: Mapping[tuple[int, int], Polynomial]

    def __post_init__(self):
        m = self.dim
        clean = {}
        for (i, j), poly in self.entries.items():
            if not (1 <= i < j <= m):
                raise StructureError(f"bivector entry ({i},{j}) must satisfy i < j")
            poly = self.ring.coerce(poly)
            if poly:
                clean[(i, j)] = poly
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @property
    def dim(self) -> int:
        return len(self.ring.vars)

    def component(self, i: int, j: int) -> Polynomial:
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.entries.get((i, j), self.ring.zero())
        return -self.entries.get((j, i), self.ring.zero())

    def as_vector(self) -> GradedVector:
        return GradedVector(self.dim, self.ring, dict(self.entries))

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "PolyBivector") -> "PolyBivector":
        if self.ring != other.ring:
            raise StructureError("bivector ring mismatch")
        merged = dict(self.entries)
        for key, poly in other.entries.items():
            merged[key] = merged.get(key, self.ring.zero()) + poly
        return PolyBivector(self.ring, merged)

    def hamiltonian_field(self, i: int) -> tuple[Polynomial, ...]:
        """pi^sharp dx_i, the field with j-component pi_{ij}."""
        return tuple(self.component(i, j) for j in range(1, self.dim + 1))


def coordinate_ring(n: int, base: Sequence[str] = ()) -> PolyRing:
    return PolyRing(tuple(f"x{i}" for i in range(1, n + 1)) + tuple(base))


def linear_poisson(L: LieAlgebra) -> PolyBivector:
    """The fibrewise-linear Poisson bivector on the dual: pi_ij = sum_k c_ijk x_k.

    Its bracket on coordinate functions reproduces the Lie bracket:
    {x_i, x_j} = sum_k c_ijk x_k.
    """
    ring = coordinate_ring(L.dim)
    entries = {}
    for (i, j), vec in L._pairs.items():
        poly = ring.zero()
        for k, value in enumerate(vec, start=1):
            if value:
                poly = poly + ring.variable(k) * value
        entries[(i, j)] = poly
    return PolyBivector(ring, entries)


def volume_form(ring: PolyRing) -> GradedForm:
    m = len(ring.vars)
    return GradedForm(m, ring, {tuple(range(1, m + 1)): 1})


def spinor(pi: PolyBivector, lam: GradedForm | None = None) -> GradedForm:
    """e^{i_pi} lambda; defaults to the standard volume dx_1 ... dx_m."""
    if lam is None:
        lam = volume_form(pi.ring)
    if lam.ring != pi.ring:
        raise StructureError("volume form ring does not match the bivector")
    return exp_interior(pi.as_vector(), lam)


@dataclass(frozen=True)
class ChartForm:
    """A form in blowup-chart coordinates; the divisor is {chart variable = 0}."""

    form: GradedForm
    chart: int
    blown: tuple[int, ...]

    @property
    def ring(self) -> PolyRing:
        return self.form.ring

    def render(self) -> str:
        names = tuple("d" + v for v in self.ring.vars)
        return self.form.render(names)


def blowup_pullback(
    form: GradedForm, chart: int, blown: Sequence[int] | None = None
) -> ChartForm:
    """Pull an ambient polynomial form back through the blowdown of chart `chart`.

    Substitutes x_c -> x~_c and x_v -> x~_c x~_v on coefficients, with
    dx_v -> x~_c dx~_v + x~_v dx~_c accordingly; unblown (base) variables and
    their differentials are left untouched.
    """
    if not isinstance(form.ring, PolyRing):
        raise StructureError("blowup pullback needs polynomial coefficients")
    bc = BlowupChart(form.ring, chart, blown)
    return ChartForm(bc.pull_form(form), chart, bc.blown)


# -- vanishing order along the divisor ----------------------------------------


def _sign_definite_reason(poly: Polynomial) -> str | None:
    """Syntactic nonvanishing certificate for a polynomial on real points."""
    if poly.is_constant():
        return "nonzero constant"
    if not poly.constant_value():
        return None
    if any(e % 2 for exps in poly.terms for e in exps):
        return None
    coeffs = poly.terms.values()
    if all(c > 0 for c in coeffs):
        return "positive even monomials plus positive constant"
    if all(c < 0 for c in coeffs):
        return "negative even monomials plus negative constant"
    return None


@dataclass(frozen=True)
class OrderCertificate:
    """Divisor-adic vanishing order with a nonvanishing verdict for the leading form.

    status is "certified" (a syntactic certificate proves the restricted
    leading form vanishes nowhere on this chart's divisor), "falsified"
    (witness_point is an explicit rational divisor point killing every
    coefficient), or "undetermined".
    """

    chart: int
    order: int
    leading: GradedForm
    status: str
    certificate: str | None = None
    witness_point: tuple[Fraction, ...] | None = None
    note: str | None = None


def vanishing_order(
    cf: ChartForm, seed: int = DEFAULT_SEED, samples: int = 200
) -> OrderCertificate:
    """Order = minimal chart-variable valuation over all coefficients; the
    leading form is the divisor restriction of (chart var)^(-order) * form."""
    if cf.form.is_zero():
        raise DomainError("the zero form has no vanishing order")
    c = cf.chart
    order = min(poly.valuation(c) for poly in cf.form.terms.values())
    leading_terms = {}
    for indices, poly in cf.form.terms.items():
        restricted = poly.shift_down(c, order).restrict_zero(c)
        if restricted:
            leading_terms[indices] = restricted
    leading = GradedForm(cf.form.dim, cf.ring, leading_terms)
    note = None
    if order == 0 and len(cf.blown) > 1:
        note = "order 0: transverse-like, outside the invariant-origin setting"

    for indices, poly in leading.terms.items():
        reason = _sign_definite_reason(poly)
        if reason:
            names = tuple("d" + v for v in cf.ring.vars)
            where = "∧".join(names[i - 1] for i in indices) if indices else "1"
            return OrderCertificate(
                chart=c,
                order=order,
                leading=leading,
                status="certified",
                certificate=f"coefficient of {where}: {reason}",
                note=note,
            )

    free = [pos for pos in range(1, len(cf.ring.vars) + 1) if pos != c]
    stream = point_stream(len(free), seed)
    for _ in range(samples):
        try:
            values = next(stream)
        except StopIteration:
            break
        point = [Fraction(0)] * len(cf.ring.vars)
        for pos, value in zip(free, values):
            point[pos - 1] = value
        if all(poly.evaluate(point) == 0 for poly in leading.terms.values()):
            return OrderCertificate(
                chart=c,
                order=order,
                leading=leading,
                status="falsified",
                witness_point=tuple(point),
                note=note,
            )
    return OrderCertificate(
        chart=c, order=order, leading=leading, status="undetermined", note=note
    )


# -- restriction to a projective line ------------------------------------------


def restrict_to_line(cf: ChartForm, xi: Sequence[Rational]) -> GradedForm:
    """Restrict a chart form to the line through direction xi (xi_chart != 0).

    Substitutes x~_j <- xi_j / xi_chart for j != chart and x~_chart <- t; the
    result has univariate coefficients in t and the original form indices.
    """
    m = len(cf.ring.vars)
    if cf.blown != tuple(range(1, m + 1)):
        raise DomainError("line restriction requires a full origin blowup")
    xi = as_covector(xi)
    if len(xi) != m:
        raise StructureError("direction vector has wrong length")
    c = cf.chart
    if xi[c - 1] == 0:
        raise DomainError(f"direction lies outside chart {c} (component {c} is zero)")
    t_ring = PolyRing(("t",))
    images = []
    for pos in range(1, m + 1):
        if pos == c:
            images.append(t_ring.variable(1))
        else:
            images.append(t_ring.const(xi[pos - 1] / xi[c - 1]))
    restricted = {
        indices: poly.substitute(images) for indices, poly in cf.form.terms.items()
    }
    return GradedForm(m, t_ring, restricted)


def t_order(form: GradedForm) -> int:
    """t-adic valuation of a form with univariate polynomial coefficients."""
    if form.is_zero():
        raise DomainError("the zero form has no t-order")
    return min(poly.valuation(1) for poly in form.terms.values())


def preferred_chart(values: Sequence[Fraction]) -> int:
    """Chart policy: largest |component|, ties broken by smallest index."""
    best = max(range(len(values)), key=lambda i: (abs(values[i]), -i))
    return best + 1


# -- lift verdict ---------------------------------------------------------------


@dataclass(frozen=True)
class LiftVerdict:
    """Certified liftability outcome with its cross-check record.

    kind: "lifts_as_poisson" (constant height 0), "lifts_as_dirac_only"
    (constant height k >= 1), or "does_not_lift" (witness covectors of
    distinct heights attached).
    """

    kind: str
    height: int | None
    classification: ClassificationVerdict
    certificates: dict[int, OrderCertificate]
    cross_checks: dict
    witnesses: tuple[Covector, Covector] | None = None
    witness_heights: tuple[int, int] | None = None


def spinor_chart_certificates(
    L: LieAlgebra, seed: int = DEFAULT_SEED, samples: int = 200
) -> dict[int, OrderCertificate]:
    """Vanishing-order certificates of the pulled-back spinor, every chart."""
    phi = spinor(linear_poisson(L))
    out = {}
    for chart in range(1, L.dim + 1):
        cf = blowup_pullback(phi, chart)
        out[chart] = vanishing_order(cf, seed=seed, samples=samples)
    return out


def lift_verdict(L: LieAlgebra, seed: int = DEFAULT_SEED, samples: int = 200) -> LiftVerdict:
    """Decide liftability via the structural classifier and cross-check the
    spinor vanishing orders against it; disagreement raises, since the two
    routes must coincide."""
    classification = classify_constant_height(L, seed=seed)
    certificates = spinor_chart_certificates(L, seed=seed, samples=samples)
    n = L.dim

    if classification.constant_height is not None:
        k = classification.constant_height
        expected = n - 1 - k
        spinor_status = "confirmed"
        for chart, cert in certificates.items():
            if cert.status == "certified" and cert.order == expected:
                continue
            if cert.status == "undetermined":
                spinor_status = "unconfirmed"
                continue
            raise DisagreementError(
                f"classifier gives constant height {k} (order {expected}) but "
                f"chart {chart} reports order {cert.order} with status {cert.status}"
            )
        kind = "lifts_as_poisson" if k == 0 else "lifts_as_dirac_only"
        cross = _cross_record(certificates, expected, spinor_status)
        return LiftVerdict(kind, k, classification, certificates, cross)

    statuses = {cert.status for cert in certificates.values()}
    orders = {cert.order for cert in certificates.values()}
    if statuses == {"certified"} and len(orders) == 1:
        raise DisagreementError(
            "classifier found height witnesses but every chart certifies a "
            f"constant vanishing order {orders.pop()}"
        )
    spinor_status = (
        "confirmed" if "falsified" in statuses or len(orders) > 1 else "unconfirmed"
    )
    cross = _cross_record(certificates, None, spinor_status)
    return LiftVerdict(
        "does_not_lift",
        None,
        classification,
        certificates,
        cross,
        witnesses=classification.witnesses,
        witness_heights=classification.witness_heights,
    )


def _cross_record(certificates, expected_order, status) -> dict:
    return {
        "expected_order": expected_order,
        "charts": {
            chart: {"order": cert.order, "status": cert.status}
            for chart, cert in sorted(certificates.items())
        },
        "spinor_agreement": status,
    }


# -- cross-oracle suites ----------------------------------------------------------


@dataclass(frozen=True)
class LineOrderRecord:
    xi: Covector
    chart: int
    order: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.order == self.expected


@dataclass(frozen=True)
class LineOrderReport:
    samples: int
    records: tuple[LineOrderRecord, ...]
    mismatches: tuple[LineOrderRecord, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_line_orders(
    L: LieAlgebra, samples: int = 200, seed: int = DEFAULT_SEED
) -> LineOrderReport:
    """Primary cross-oracle identity: for each sampled covector, the t-adic
    order of the line-restricted pullback spinor equals dim - 1 - height."""
    if samples < 1:
        raise DomainError("samples must be positive")
    phi = spinor(linear_poisson(L))
    pullbacks = {
        chart: blowup_pullback(phi, chart) for chart in range(1, L.dim + 1)
    }
    records = []
    stream = covector_stream(L.dim, seed)
    for _ in range(samples):
        xi = next(stream)
        chart = preferred_chart(xi)
        restricted = restrict_to_line(pullbacks[chart], xi)
        got = t_order(restricted)
        want = L.dim - 1 - height(L, xi)
        records.append(LineOrderRecord(xi, chart, got, want))
    records = tuple(records)
    mismatches = tuple(r for r in records if not r.ok)
    return LineOrderReport(samples, records, mismatches)


@dataclass(frozen=True)
class PerturbationReport:
    chart: int
    order_base: int
    order_perturbed: int
    points: tuple[tuple[tuple[Fraction, ...], bool, bool], ...]

    @property
    def agree(self) -> bool:
        return self.order_base == self.order_perturbed and all(
            a == b for _, a, b in self.points
        )


def perturbation_invariance_check(
    L: LieAlgebra,
    w: PolyBivector,
    chart: int,
    samples: int = 50,
    seed: int = DEFAULT_SEED,
) -> PerturbationReport:
    """Perturbing the linear bivector by terms vanishing to second order at
    the origin must not change pullback-spinor vanishing behaviour: both
    spinors get equal chart orders and their leading forms vanish at the
    same sampled divisor points."""
    pi = linear_poisson(L)
    if w.ring != pi.ring:
        raise StructureError("perturbation ring does not match the linear bivector")
    blown = tuple(range(1, w.dim + 1))
    for (i, j), poly in w.entries.items():
        if poly.min_degree_in(blown) < 2:
            raise DomainError(
                f"perturbation entry ({i},{j}) does not vanish to second order at 0"
            )
    cf_base = blowup_pullback(spinor(pi), chart)
    cf_pert = blowup_pullback(spinor(pi + w), chart)
    order_base = min(p.valuation(chart) for p in cf_base.form.terms.values())
    order_pert = min(p.valuation(chart) for p in cf_pert.form.terms.values())

    def leading(cf: ChartForm, order: int):
        polys = []
        for poly in cf.form.terms.values():
            restricted = poly.shift_down(chart, order).restrict_zero(chart)
            if restricted:
                polys.append(restricted)
        return polys

    lead_base = leading(cf_base, order_base)
    lead_pert = leading(cf_pert, order_pert)
    m = len(pi.ring.vars)
    free = [pos for pos in range(1, m + 1) if pos != chart]
    stream = point_stream(len(free), seed)
    points = []
    for _ in range(samples):
        try:
            values = next(stream)
        except StopIteration:
            break
        point = [Fraction(0)] * m
        for pos, value in zip(free, values):
            point[pos - 1] = value
        nz_base = any(p.evaluate(point) != 0 for p in lead_base)
        nz_pert = any(p.evaluate(point) != 0 for p in lead_pert)
        points.append((tuple(point), nz_base, nz_pert))
    return PerturbationReport(chart, order_base, order_pert, tuple(points))
