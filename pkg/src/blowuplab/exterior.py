"""Sparse exterior algebra over an n-dimensional space, exact coefficients.

Elements are stored as maps from strictly increasing 1-based index tuples to
nonzero ring coefficients; mixed degrees are allowed.  ``GradedForm`` indexes
the dual basis (wedge products of the theta_i / dx_i), ``GradedVector`` the
basis multivectors (wedge products of the e_i).

Insertion of multivectors follows the convention i_{X wedge Y} = i_Y i_X, so
for an increasing tuple (k_1 < ... < k_p) the single insertions are applied
in ascending index order.  All sign tables below derive from that choice.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .errors import DomainError, StructureError
from .rings import CoeffRing, RATIONALS

IndexTuple = tuple[int, ...]


def _sort_indices(dim: int, indices: Sequence[int]):
    """Sort an index tuple, returning (sorted tuple, permutation sign) or sign 0."""
    idx = list(indices)
    for i in idx:
        if not 1 <= i <= dim:
            raise StructureError(f"index {i} out of range 1..{dim}")
    if len(set(idx)) != len(idx):
        return (), 0
    sign = 1
    # insertion sort; tuples are tiny
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def _merge_sign(left: IndexTuple, right: IndexTuple):
    """Shuffle sign for merging two strictly increasing tuples, or 0 if they meet."""
    if set(left) & set(right):
        return (), 0
    inversions = 0
    for a in left:
        for b in right:
            if b < a:
                inversions += 1
    merged = tuple(sorted(left + right))
    return merged, (-1) ** inversions


class _Alternating:
    """Shared implementation of graded forms and graded multivectors."""

    __slots__ = ("dim", "ring", "terms")

    def __init__(self, dim: int, ring: CoeffRing, terms: Mapping | None = None):
        if dim < 0:
            raise StructureError("dimension must be nonnegative")
        self.dim = dim
        self.ring = ring
        clean: dict[IndexTuple, object] = {}
        if terms:
            for indices, coeff in terms.items():
                sorted_idx, sign = _sort_indices(dim, indices)
                if sign == 0:
                    continue
                coeff = ring.coerce(coeff)
                if sign < 0:
                    coeff = -coeff
                if sorted_idx in clean:
                    coeff = clean[sorted_idx] + coeff
                if ring.is_zero(coeff):
                    clean.pop(sorted_idx, None)
                else:
                    clean[sorted_idx] = coeff
        self.terms = dict(sorted(clean.items(), key=lambda kv: (len(kv[0]), kv[0])))

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, ring: CoeffRing = RATIONALS):
        return cls(dim, ring)

    @classmethod
    def term(cls, dim: int, indices: Sequence[int], coeff=1, ring: CoeffRing = RATIONALS):
        return cls(dim, ring, {tuple(indices): coeff})

    # -- structure -------------------------------------------------------------

    def _require_compatible(self, other: "_Alternating"):
        if type(self) is not type(other):
            raise StructureError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if self.dim != other.dim:
            raise StructureError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.ring != other.ring:
            raise StructureError(f"coefficient ring mismatch: {self.ring} vs {other.ring}")

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({len(indices) for indices in self.terms}))

    def degree_part(self, degree: int):
        return type(self)(
            self.dim,
            self.ring,
            {i: c for i, c in self.terms.items() if len(i) == degree},
        )

    def coefficient(self, indices: Sequence[int]):
        sorted_idx, sign = _sort_indices(self.dim, indices)
        if sign == 0:
            return self.ring.zero()
        coeff = self.terms.get(sorted_idx, self.ring.zero())
        return coeff if sign > 0 else -coeff

    # -- linear operations -------------------------------------------------------

    def __add__(self, other):
        self._require_compatible(other)
        merged = dict(self.terms)
        for indices, coeff in other.terms.items():
            if indices in merged:
                merged[indices] = merged[indices] + coeff
            else:
                merged[indices] = coeff
        return type(self)(self.dim, self.ring, merged)

    def __neg__(self):
        return type(self)(self.dim, self.ring, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        factor = self.ring.coerce(value)
        return type(self)(
            self.dim, self.ring, {i: c * factor for i, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, _Alternating):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.dim == other.dim
            and self.ring == other.ring
            and self.terms == other.terms
        )

    __hash__ = None

    # -- multiplication ----------------------------------------------------------

    def wedge(self, other):
        self._require_compatible(other)
        out: dict[IndexTuple, object] = {}
        for left, lc in self.terms.items():
            for right, rc in other.terms.items():
                merged, sign = _merge_sign(left, right)
                if sign == 0:
                    continue
                coeff = lc * rc
                if sign < 0:
                    coeff = -coeff
                if merged in out:
                    coeff = out[merged] + coeff
                if self.ring.is_zero(coeff):
                    out.pop(merged, None)
                else:
                    out[merged] = coeff
        return type(self)(self.dim, self.ring, out)

    def wedge_power(self, exponent: int):
        result = type(self)(self.dim, self.ring, {(): 1})
        for _ in range(exponent):
            result = result.wedge(self)
        return result

    # -- rendering ------------------------------------------------------------------

    def render(self, names: Sequence[str]) -> str:
        if len(names) != self.dim:
            raise StructureError("need one basis name per dimension")
        if not self.terms:
            return "0"
        pieces = []
        one = self.ring.one()
        for indices, coeff in self.terms.items():
            body = "∧".join(names[i - 1] for i in indices)
            text = self.ring.render(coeff)
            if not indices:
                pieces.append(text)
            elif coeff == one:
                pieces.append(body)
            elif coeff == -one:
                pieces.append("-" + body)
            else:
                if " " in text:  # multi-term polynomial coefficient
                    text = f"({text})"
                pieces.append(f"{text}*{body}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}(dim={self.dim}, terms={{{', '.join(f'{i}: {self.ring.render(c)}' for i, c in self.terms.items())}}})"


class GradedForm(_Alternating):
    """Element of the exterior algebra over the dual basis; may mix degrees."""


class GradedVector(_Alternating):
    """Element of the exterior algebra over the basis multivectors."""


def wedge(a: _Alternating, b: _Alternating) -> _Alternating:
    return a.wedge(b)


def _insert_single(index: int, terms: dict, ring) -> dict:
    """Insertion of the basis vector e_index into a term map (degree -1)."""
    out: dict[IndexTuple, object] = {}
    for indices, coeff in terms.items():
        if index not in indices:
            continue
        pos = indices.index(index)
        remaining = indices[:pos] + indices[pos + 1 :]
        value = coeff if pos % 2 == 0 else -coeff
        if remaining in out:
            value = out[remaining] + value
        if ring.is_zero(value):
            out.pop(remaining, None)
        else:
            out[remaining] = value
    return out


def interior(v: GradedVector, a: GradedForm) -> GradedForm:
    """Insertion i_v for a degree-1 vector; a graded derivation of degree -1."""
    if not isinstance(v, GradedVector) or not isinstance(a, GradedForm):
        raise StructureError("interior expects (GradedVector, GradedForm)")
    if v.dim != a.dim or v.ring != a.ring:
        raise StructureError("interior operands must share dimension and ring")
    if any(len(indices) != 1 for indices in v.terms):
        raise DomainError("interior expects a homogeneous degree-1 vector")
    out: dict[IndexTuple, object] = {}
    for (index,), vc in v.terms.items():
        for indices, coeff in _insert_single(index, a.terms, a.ring).items():
            value = vc * coeff
            if indices in out:
                value = out[indices] + value
            if a.ring.is_zero(value):
                out.pop(indices, None)
            else:
                out[indices] = value
    return GradedForm(a.dim, a.ring, out)


def multi_interior(w: GradedVector, a: GradedForm) -> GradedForm:
    """Insertion of a multivector: i_{X wedge Y} = i_Y i_X, extended linearly."""
    if not isinstance(w, GradedVector) or not isinstance(a, GradedForm):
        raise StructureError("multi_interior expects (GradedVector, GradedForm)")
    if w.dim != a.dim or w.ring != a.ring:
        raise StructureError("multi_interior operands must share dimension and ring")
    total: dict[IndexTuple, object] = {}
    for indices, wc in w.terms.items():
        current = a.terms
        for index in indices:  # ascending order realises i_{k_p} ... i_{k_1}
            current = _insert_single(index, current, a.ring)
            if not current:
                break
        for idx, coeff in current.items():
            value = wc * coeff
            if idx in total:
                value = total[idx] + value
            if a.ring.is_zero(value):
                total.pop(idx, None)
            else:
                total[idx] = value
    return GradedForm(a.dim, a.ring, total)


def exp_interior(pi: GradedVector, lam: GradedForm) -> GradedForm:
    """e^{i_pi} lam = sum_k (1/k!) i_pi^k lam for a bivector pi.

    The series stops at floor(dim/2); the top-degree component of the result
    is lam itself.
    """
    if not isinstance(pi, GradedVector) or not isinstance(lam, GradedForm):
        raise StructureError("exp_interior expects (GradedVector, GradedForm)")
    if pi.dim != lam.dim or pi.ring != lam.ring:
        raise StructureError("exp_interior operands must share dimension and ring")
    if any(len(indices) != 2 for indices in pi.terms):
        raise DomainError("exp_interior expects a homogeneous degree-2 vector")
    result = lam
    power = lam
    for k in range(1, lam.dim // 2 + 1):
        power = multi_interior(pi, power)
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(k)))
    return result
