"""Geometric oracle: lifted vector fields, the divisor distribution, and the
exact identities tying its rank to heights and coadjoint orbits.

For a nonzero direction v, the distribution at the divisor point [v] is
spanned by the lifts of the Hamiltonian fields of constant covectors
annihilating v, evaluated at [v].  Its rank equals twice the height of the
corresponding covector; together with the orbit-dimension case split
(2k + 2 when the radial line is tangent to the orbit, 2k otherwise) and the
Cartan-class identity, this gives a per-point cross-check that must hold
with zero violations on every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .charts import BlowupChart
from .errors import DomainError, InternalError, StructureError
from .liealg import (
    Covector,
    LieAlgebra,
    as_covector,
    cartan_class,
    coadjoint_orbit_dim,
    element_type,
    height,
    radial_in_orbit,
)
from .poisson_spinor import linear_poisson, preferred_chart
from .rings import Polynomial, PolyRing
from .sampling import DEFAULT_SEED, covector_stream


@dataclass(frozen=True)
class LiftedVectorField:
    """A vector field in blowup-chart coordinates, tangent to the divisor."""

    chart: int
    ring: PolyRing
    coeffs: tuple[Polynomial, ...]

    def apply(self, poly: Polynomial) -> Polynomial:
        """Derivation action: sum_j coeff_j * d(poly)/d(x~_j)."""
        if poly.vars != self.ring.vars:
            raise StructureError("polynomial does not live in the chart ring")
        out = Polynomial.zero(self.ring.vars)
        for j, coeff in enumerate(self.coeffs, start=1):
            if coeff:
                out = out + coeff * poly.diff(j)
        return out

    def evaluate(self, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(coeff.evaluate(point) for coeff in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def render(self) -> str:
        pieces = []
        for name, coeff in zip(self.ring.vars, self.coeffs):
            if coeff:
                text = str(coeff)
                if " " in text:
                    text = f"({text})"
                pieces.append(f"{text}*d/d{name}")
        return " + ".join(pieces) if pieces else "0"


def lift_vector_field(
    ring: PolyRing, coefficients: Sequence[Polynomial], chart: int
) -> LiftedVectorField:
    """The unique blowup vector field p-related to sum_j a_j d/dx_j.

    Requires every a_j to vanish at the origin; the result is polynomial and
    tangent to the divisor, both of which are verified.
    """
    bc = BlowupChart(ring, chart)
    lifted = bc.lift_vector_field(coefficients)
    return LiftedVectorField(chart, bc.chart_ring, lifted)


@dataclass(frozen=True)
class DistributionSample:
    """The divisor distribution at one projective point, with its exact rank."""

    point: Covector
    chart: int
    basis: tuple[tuple[Fraction, ...], ...]
    rank: int


def distribution_at(L: LieAlgebra, v: Sequence) -> DistributionSample:
    """Span of lifted Hamiltonian fields of v-annihilating covectors at [v].

    Works with the linear part of the bivector, which determines the
    distribution: covectors are taken constant, and the annihilator of v is
    spanned by dx_j - (v_j / v_c) dx_c for j != c in the chart c of largest
    |v component|.
    """
    v = as_covector(v)
    if len(v) != L.dim:
        raise StructureError("direction vector length does not match the algebra")
    if not any(v):
        raise DomainError("direction vector must be nonzero")
    pi = linear_poisson(L)
    chart = preferred_chart(v)
    bc = BlowupChart(pi.ring, chart)
    lifts = [
        bc.lift_vector_field(pi.hamiltonian_field(i)) for i in range(1, L.dim + 1)
    ]
    pivot = v[chart - 1]
    point = [value / pivot for value in v]
    point[chart - 1] = Fraction(0)
    rows = []
    for j in range(1, L.dim + 1):
        if j == chart:
            continue
        combo = [
            lifts[j - 1][k] - (v[j - 1] / pivot) * lifts[chart - 1][k]
            for k in range(L.dim)
        ]
        row = [poly.evaluate(point) for poly in combo]
        if row[chart - 1] != 0:
            raise InternalError("lifted annihilator field is not tangent to the divisor")
        rows.append(row)
    r = linalg.rank(rows)
    if r % 2:
        raise InternalError("divisor distribution has odd rank")
    basis = tuple(tuple(row) for row in linalg.rref_basis(rows))
    return DistributionSample(tuple(point), chart, basis, r)


@dataclass(frozen=True)
class OrbitRankRecord:
    v: Covector
    height: int
    element_type: int
    cartan_class: int
    orbit_dim: int
    radial: bool
    distribution_rank: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class OrbitRankReport:
    samples: int
    records: tuple[OrbitRankRecord, ...]
    mismatches: tuple[OrbitRankRecord, ...]
    heights: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def constant_height(self) -> bool:
        return len(self.heights) == 1


def orbit_rank_crosscheck(
    L: LieAlgebra, samples: int = 100, seed: int = DEFAULT_SEED
) -> OrbitRankReport:
    """Check, at seeded sample points, every exact identity between the
    distribution rank, height, orbit dimension, radial membership and Cartan
    class.  Identities hold pointwise on any algebra; global constancy of
    the height is reported separately."""
    if samples < 1:
        raise DomainError("samples must be positive")
    records = []
    stream = covector_stream(L.dim, seed)
    for _ in range(samples):
        v = next(stream)
        k = height(L, v)
        etype = int(element_type(L, v))
        cls = cartan_class(L, v)
        orbit = coadjoint_orbit_dim(L, v)
        radial = radial_in_orbit(L, v)
        sample = distribution_at(L, v)
        failures = []
        if sample.rank != 2 * k:
            failures.append(f"distribution rank {sample.rank} != 2*height {2 * k}")
        expected_orbit = 2 * k + 2 if radial else 2 * k
        if orbit != expected_orbit:
            failures.append(f"orbit dim {orbit} != {expected_orbit}")
        expected_rank = orbit - 2 if radial else orbit
        if sample.rank != expected_rank:
            failures.append(
                f"distribution rank {sample.rank} != orbit-dim rule {expected_rank}"
            )
        if cls != 2 * k + etype:
            failures.append(f"Cartan class {cls} != 2*{k} + {etype}")
        records.append(
            OrbitRankRecord(v, k, etype, cls, orbit, radial, sample.rank, tuple(failures))
        )
    records = tuple(records)
    mismatches = tuple(r for r in records if not r.ok)
    heights = tuple(sorted({r.height for r in records}))
    return OrbitRankReport(samples, records, mismatches, heights)
