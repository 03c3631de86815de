"""Lie algebra core: structure constants, Chevalley-Eilenberg differential,
heights, types, Cartan class, Killing form, derived ideal, coadjoint data.

Sign convention, fixed once for the whole package: on a degree-1 generator,

    (d xi)(b_i, b_j) = -xi([b_i, b_j]),

extended to higher degrees as a derivation of degree +1.  The opposite
convention flips signs of odd-degree outputs but leaves every height, rank
and order computed here unchanged; the convention above is what makes the
generic so(3) covector satisfy xi wedge d(xi) = -(sum xi_j^2) theta_123,
which the fixtures assert verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import DisagreementError, DomainError, JacobiError, StructureError
from .exterior import GradedForm
from .rings import CoeffRing, RATIONALS, Rational

Covector = tuple[Fraction, ...]


def as_covector(values: Sequence[Rational]) -> Covector:
    return tuple(Fraction(v) for v in values)


class LieAlgebra:
    """A finite-dimensional Lie algebra over the rationals.

    Structure constants follow [b_i, b_j] = sum_k c(i,j,k) b_k, stored
    sparsely for i < j only; the i > j half is implied by antisymmetry, which
    makes antisymmetry hold by construction (conflicting duplicate entries
    are rejected eagerly).  The Jacobi identity is *not* required at
    construction time: `jacobi_violations()` computes and caches the defect
    list, and operations whose meaning depends on it call `validate()`.
    Instances are immutable after construction; the cache is write-once.
    """

    __slots__ = ("dim", "name", "_pairs", "_jacobi")

    def __init__(self, dim: int, brackets: Mapping, name: str | None = None):
        if dim < 1:
            raise StructureError("dimension must be positive")
        self.dim = dim
        self.name = name
        pairs: dict[tuple[int, int], list[Fraction]] = {}
        for (i, j), components in brackets.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise StructureError(f"bracket indices ({i},{j}) out of range 1..{dim}")
            if isinstance(components, Mapping):
                vector = [Fraction(0)] * dim
                for k, value in components.items():
                    if not 1 <= k <= dim:
                        raise StructureError(f"bracket target index {k} out of range")
                    vector[k - 1] = Fraction(value)
            else:
                vector = [Fraction(v) for v in components]
                if len(vector) != dim:
                    raise StructureError("bracket value vector has wrong length")
            if i == j:
                if any(vector):
                    raise StructureError(f"[b_{i}, b_{i}] must vanish")
                continue
            key, vec = ((i, j), vector) if i < j else ((j, i), [-v for v in vector])
            if key in pairs:
                if pairs[key] != vec:
                    raise StructureError(
                        f"antisymmetry violated on bracket pair {key}"
                    )
            elif any(vec):
                pairs[key] = vec
        self._pairs = {k: tuple(v) for k, v in sorted(pairs.items())}
        self._jacobi = None

    # -- accessors ---------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        """[b_i, b_j] as a coordinate vector."""
        if i == j:
            return [Fraction(0)] * self.dim
        if i < j:
            stored = self._pairs.get((i, j))
            sign = 1
        else:
            stored = self._pairs.get((j, i))
            sign = -1
        if stored is None:
            return [Fraction(0)] * self.dim
        return [sign * v for v in stored]

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket_basis(i, j)[k - 1]

    def bracket(self, u: Sequence[Rational], v: Sequence[Rational]) -> list[Fraction]:
        """[u, v] for arbitrary coordinate vectors."""
        u = [Fraction(x) for x in u]
        v = [Fraction(x) for x in v]
        if len(u) != self.dim or len(v) != self.dim:
            raise StructureError("vector length does not match the algebra dimension")
        out = [Fraction(0)] * self.dim
        for (i, j), vec in self._pairs.items():
            factor = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
            if factor:
                for k in range(self.dim):
                    out[k] += factor * vec[k]
        return out

    def ad_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ad_{b_i} with columns [b_i, b_a]."""
        cols = [self.bracket_basis(i, a) for a in range(1, self.dim + 1)]
        return [[cols[a][k] for a in range(self.dim)] for k in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self._pairs

    # -- validation -----------------------------------------------------------

    def jacobi_violations(self):
        if self._jacobi is None:
            self._jacobi = jacobi_check(self)
        return self._jacobi

    def validate(self) -> "LieAlgebra":
        violations = self.jacobi_violations()
        if violations:
            raise JacobiError(violations)
        return self

    def __repr__(self):
        label = self.name or "?"
        return f"LieAlgebra({label}, dim={self.dim})"


def jacobi_check(L: LieAlgebra) -> list[tuple[tuple[int, int, int], tuple[Fraction, ...]]]:
    """All triples (i, j, k), i<j<k, whose cyclic double brackets fail to cancel.

    Returns the nonzero defect vector [[b_i,b_j],b_k] + [[b_j,b_k],b_i]
    + [[b_k,b_i],b_j] for each violating triple; empty means the table is a
    Lie algebra.
    """
    basis = [
        [Fraction(int(a == b)) for a in range(L.dim)] for b in range(L.dim)
    ]
    violations = []
    for i in range(1, L.dim + 1):
        for j in range(i + 1, L.dim + 1):
            for k in range(j + 1, L.dim + 1):
                defect = [Fraction(0)] * L.dim
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = L.bracket_basis(a, b)
                    outer = L.bracket(inner, basis[c - 1])
                    for m in range(L.dim):
                        defect[m] += outer[m]
                if any(defect):
                    violations.append(((i, j, k), tuple(defect)))
    return violations


def change_basis(L: LieAlgebra, matrix: Sequence[Sequence[Rational]]) -> LieAlgebra:
    """Structure constants in the basis b'_j = sum_i matrix[i][j] b_i."""
    cols = [[Fraction(matrix[i][j]) for i in range(L.dim)] for j in range(L.dim)]
    inv = linalg.inverse([[Fraction(matrix[i][j]) for j in range(L.dim)] for i in range(L.dim)])
    if inv is None:
        raise DomainError("change of basis requires an invertible matrix")
    brackets = {}
    for i in range(1, L.dim + 1):
        for j in range(i + 1, L.dim + 1):
            w = L.bracket(cols[i - 1], cols[j - 1])
            new = linalg.mat_vec(inv, w)
            if any(new):
                brackets[(i, j)] = new
    return LieAlgebra(L.dim, brackets, name=f"{L.name or 'algebra'}~conj")


# -- Chevalley-Eilenberg differential ------------------------------------------


def covector_form(L: LieAlgebra, xi: Sequence, ring: CoeffRing = RATIONALS) -> GradedForm:
    """The degree-1 form sum_i xi_i theta_i (coefficients in any ring)."""
    return GradedForm(L.dim, ring, {(i + 1,): xi[i] for i in range(L.dim)})


def _generator_differential(L: LieAlgebra, k: int, ring: CoeffRing) -> GradedForm:
    terms = {}
    for (i, j), vec in L._pairs.items():
        value = vec[k - 1]
        if value:
            terms[(i, j)] = -value
    return GradedForm(L.dim, ring, terms)


def ce_differential(L: LieAlgebra, form: GradedForm) -> GradedForm:
    """Chevalley-Eilenberg differential, extended as a degree +1 derivation.

    Ring-generic: coefficients may be rationals or polynomials (the structure
    constants act by scalars).  d o d = 0 precisely when the Jacobi identity
    holds, which the property suite checks in both directions.
    """
    if form.dim != L.dim:
        raise StructureError("form dimension does not match the algebra")
    ring = form.ring
    d_theta = {}
    result = GradedForm.zero(L.dim, ring)
    for indices, coeff in form.terms.items():
        for t, k in enumerate(indices):
            if k not in d_theta:
                d_theta[k] = _generator_differential(L, k, ring)
            if d_theta[k].is_zero():
                continue
            pre = GradedForm(L.dim, ring, {indices[:t]: 1})
            post = GradedForm(L.dim, ring, {indices[t + 1 :]: 1})
            piece = pre.wedge(d_theta[k]).wedge(post).scale(coeff)
            if t % 2:
                piece = -piece
            result = result + piece
    return result


# -- heights, types, orbits ----------------------------------------------------


class ElementType(IntEnum):
    ONE = 1
    TWO = 2


def _require_nonzero(L: LieAlgebra, xi: Sequence) -> Covector:
    xi = as_covector(xi)
    if len(xi) != L.dim:
        raise StructureError("covector length does not match the algebra dimension")
    if not any(xi):
        raise DomainError("covector must be nonzero")
    return xi


def _height_by_wedge(L: LieAlgebra, xi: Covector) -> int:
    form = covector_form(L, xi)
    omega = ce_differential(L, form)
    current = form
    k = 0
    while True:
        nxt = current.wedge(omega)
        if nxt.is_zero():
            return k
        current = nxt
        k += 1


def _height_by_rank(L: LieAlgebra, xi: Covector) -> int:
    """Independent oracle: half the rank of xi([.,.]) restricted to ker xi."""
    pivot = next(i for i, v in enumerate(xi) if v)
    others = [i for i in range(L.dim) if i != pivot]
    adapted = []
    for i in others:
        # b'_i = b_i - (xi_i / xi_pivot) b_pivot lies in ker xi
        vec = [Fraction(0)] * L.dim
        vec[i] = Fraction(1)
        vec[pivot] = -xi[i] / xi[pivot]
        adapted.append(vec)
    rows = []
    for u in adapted:
        row = []
        for v in adapted:
            w = L.bracket(u, v)
            row.append(sum((xi[m] * w[m] for m in range(L.dim)), Fraction(0)))
        rows.append(row)
    r = linalg.rank(rows)
    if r % 2:
        raise DisagreementError("skew matrix of a covector has odd rank")
    return r // 2


def height(L: LieAlgebra, xi: Sequence) -> int:
    """The unique k with xi wedge (d xi)^k != 0 and xi wedge (d xi)^{k+1} = 0.

    Computed by iterated wedging and cross-checked against the rank of the
    skew pairing on ker xi; a mismatch raises, since the two must agree.
    """
    xi = _require_nonzero(L, xi)
    by_wedge = _height_by_wedge(L, xi)
    by_rank = _height_by_rank(L, xi)
    if by_wedge != by_rank:
        raise DisagreementError(
            f"height oracles disagree on {xi}: wedge {by_wedge}, rank {by_rank}"
        )
    return by_wedge


def element_type(L: LieAlgebra, xi: Sequence) -> ElementType:
    """Type ONE iff (d xi)^{k+1} = 0 at k = height(xi); TWO otherwise."""
    xi = _require_nonzero(L, xi)
    k = height(L, xi)
    omega = ce_differential(L, covector_form(L, xi))
    return ElementType.ONE if omega.wedge_power(k + 1).is_zero() else ElementType.TWO


def cartan_class(L: LieAlgebra, xi: Sequence) -> int:
    """Cartan class: 2k+1 when (d xi)^{k+1} = 0, else 2k+2, at k = height(xi)."""
    xi = _require_nonzero(L, xi)
    omega = ce_differential(L, covector_form(L, xi))
    r = 0
    while not omega.wedge_power(r + 1).is_zero():
        r += 1
    h = _height_by_wedge(L, xi)
    return 2 * h + 1 if r == h else 2 * h + 2


def _pairing_matrix(L: LieAlgebra, xi: Covector) -> list[list[Fraction]]:
    """A[i][j] = (d xi)(b_i, b_j) = -xi([b_i, b_j]); rows span T_xi O_xi."""
    rows = []
    for i in range(1, L.dim + 1):
        row = []
        for j in range(1, L.dim + 1):
            w = L.bracket_basis(i, j)
            row.append(-sum((xi[m] * w[m] for m in range(L.dim)), Fraction(0)))
        rows.append(row)
    return rows


def coadjoint_orbit_dim(L: LieAlgebra, xi: Sequence) -> int:
    """dim O_xi = rank of the skew matrix (d xi)(b_i, b_j); always even."""
    xi = _require_nonzero(L, xi)
    r = linalg.rank(_pairing_matrix(L, xi))
    if r % 2:
        raise DisagreementError("coadjoint orbit dimension came out odd")
    return r


def radial_in_orbit(L: LieAlgebra, xi: Sequence) -> bool:
    """Whether xi itself is tangent to its coadjoint orbit (exact solve)."""
    xi = _require_nonzero(L, xi)
    return linalg.in_row_space(_pairing_matrix(L, xi), list(xi))


@dataclass(frozen=True)
class HeightReport:
    height: int
    element_type: ElementType
    cartan_class: int
    orbit_dim: int
    radial_in_orbit: bool


def height_report(L: LieAlgebra, xi: Sequence) -> HeightReport:
    """Aggregate of all per-covector invariants, mutually cross-checked.

    The identities class = 2*height + type, orbit_dim = 2*height (+2 for
    type TWO) and radial <=> type TWO are theorems; a violation means an
    implementation bug and raises instead of returning.
    """
    xi = _require_nonzero(L, xi)
    k = height(L, xi)
    etype = element_type(L, xi)
    cls = cartan_class(L, xi)
    orbit = coadjoint_orbit_dim(L, xi)
    radial = radial_in_orbit(L, xi)
    if cls != 2 * k + int(etype):
        raise DisagreementError(f"Cartan class {cls} != 2*{k} + {int(etype)}")
    expected_orbit = 2 * k if etype is ElementType.ONE else 2 * k + 2
    if orbit != expected_orbit:
        raise DisagreementError(f"orbit dimension {orbit} != {expected_orbit}")
    if radial != (etype is ElementType.TWO):
        raise DisagreementError("radial-line membership contradicts the element type")
    return HeightReport(k, etype, cls, orbit, radial)


# -- classical invariants -----------------------------------------------------


def killing_form(L: LieAlgebra) -> list[list[Fraction]]:
    """B_ij = trace(ad_{b_i} ad_{b_j}), an exact symmetric matrix."""
    ads = [L.ad_matrix(i) for i in range(1, L.dim + 1)]
    n = L.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            trace = Fraction(0)
            for a in range(n):
                for b in range(n):
                    trace += ads[i][a][b] * ads[j][b][a]
            row.append(trace)
        out.append(row)
    return out


def derived_algebra(L: LieAlgebra) -> list[list[Fraction]]:
    """Row-reduced basis of [g, g] = span of all basis brackets."""
    rows = [list(vec) for vec in L._pairs.values()]
    return linalg.rref_basis(rows)
