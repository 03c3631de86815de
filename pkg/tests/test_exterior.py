"""Exterior algebra laws: wedge, insertion, exponential of insertion."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from blowuplab import (
    GradedForm,
    GradedVector,
    PolyRing,
    RATIONALS,
    StructureError,
    exp_interior,
    interior,
    multi_interior,
    wedge,
)
from blowuplab.errors import DomainError

from conftest import random_form, random_homogeneous, rational


def dx(dim, *indices):
    return GradedForm.term(dim, indices)


def ev(dim, *indices):
    return GradedVector.term(dim, indices)


def test_wedge_basis_cases():
    assert wedge(dx(4, 1), dx(4, 2)) == dx(4, 1, 2)
    assert wedge(dx(4, 1), dx(4, 1)).is_zero()
    left = wedge(dx(4, 1, 2), dx(4, 3, 4))
    right = wedge(dx(4, 3, 4), dx(4, 1, 2))
    assert left == right == dx(4, 1, 2, 3, 4)


def test_index_normalization_signs():
    assert GradedForm.term(3, (2, 1)) == -dx(3, 1, 2)
    assert GradedForm.term(3, (2, 2)).is_zero()
    assert GradedForm(3, RATIONALS, {(3, 1, 2): 1}) == dx(3, 1, 2, 3)


def test_interior_basis_cases():
    assert interior(ev(3, 1), dx(3, 1, 2)) == dx(3, 2)
    assert interior(ev(3, 2), dx(3, 1, 2)) == -dx(3, 1)
    assert interior(ev(3, 3), dx(3, 1, 2)).is_zero()


def test_multi_interior_convention():
    # i_{e1 ^ e2} = i_{e2} i_{e1}
    assert multi_interior(ev(3, 1, 2), dx(3, 1, 2)) == GradedForm.term(3, ())
    assert multi_interior(ev(3, 1, 2), GradedForm.term(3, (2, 1))) == GradedForm.term(
        3, (), -1
    )
    assert multi_interior(ev(3, 1, 2), dx(3, 1, 3)).is_zero()


def test_exp_interior_small_cases():
    lam = dx(4, 1, 2, 3, 4)
    assert exp_interior(GradedVector.zero(4), lam) == lam
    lam2 = dx(2, 1, 2)
    c = Fraction(5, 3)
    result = exp_interior(GradedVector.term(2, (1, 2), c), lam2)
    assert result == lam2 + GradedForm.term(2, (), c)


def test_exp_interior_constant_so3_point():
    # linear so(3) bivector frozen at the point (2, -1/2, 3)
    x = (Fraction(2), Fraction(-1, 2), Fraction(3))
    pi = GradedVector(3, RATIONALS, {(1, 2): x[2], (1, 3): -x[1], (2, 3): x[0]})
    lam = dx(3, 1, 2, 3)
    expected = lam + GradedForm(3, RATIONALS, {(1,): x[0], (2,): x[1], (3,): x[2]})
    assert exp_interior(pi, lam) == expected


def test_wedge_graded_commutativity_randomized(rng):
    checked = 0
    while checked < 120:
        dim = rng.randint(1, 8)
        p = rng.randint(0, dim)
        q = rng.randint(0, dim)
        a = random_homogeneous(rng, dim, p)
        b = random_homogeneous(rng, dim, q)
        sign = (-1) ** (p * q)
        lhs = wedge(a, b)
        rhs = wedge(b, a)
        assert lhs == (rhs if sign > 0 else -rhs)
        checked += 1


def test_wedge_bilinear_associative(rng):
    for _ in range(60):
        dim = rng.randint(2, 6)
        a = random_form(rng, dim)
        b = random_form(rng, dim)
        c = random_form(rng, dim)
        assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_interior_graded_derivation(rng):
    checked = 0
    while checked < 120:
        dim = rng.randint(1, 7)
        p = rng.randint(0, dim)
        a = random_homogeneous(rng, dim, p)
        b = random_form(rng, dim)
        v = GradedVector(
            dim, RATIONALS, {(i,): rational(rng) for i in range(1, dim + 1)}
        )
        lhs = interior(v, wedge(a, b))
        rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b)).scale((-1) ** p)
        assert lhs == rhs
        checked += 1


def test_interior_squares_to_zero(rng):
    for _ in range(100):
        dim = rng.randint(1, 7)
        a = random_form(rng, dim)
        v = GradedVector(
            dim, RATIONALS, {(i,): rational(rng) for i in range(1, dim + 1)}
        )
        assert interior(v, interior(v, a)).is_zero()


def test_exp_interior_top_component_and_degree_steps(rng):
    for _ in range(60):
        dim = rng.randint(2, 7)
        pi = random_homogeneous(rng, dim, 2, cls=GradedVector)
        lam = GradedForm.term(dim, tuple(range(1, dim + 1)), rational(rng) or 1)
        result = exp_interior(pi, lam)
        assert result.degree_part(dim) == lam
        assert all((dim - d) % 2 == 0 for d in result.degrees())


def test_polynomial_coefficient_closure(rng):
    ring = PolyRing(("x1", "x2"))
    a = GradedForm(2, ring, {(1,): ring.parse("x1"), (2,): ring.parse("x2 - 1")})
    b = GradedForm(2, ring, {(): ring.parse("3*x1*x2")})
    out = wedge(a, b) + a.scale(Fraction(1, 2))
    assert all(type(c).__name__ == "Polynomial" for c in out.terms.values())
    v = GradedVector(2, ring, {(1,): ring.one()})
    assert interior(v, a) == GradedForm(2, ring, {(): ring.parse("x1")})


def test_structure_errors():
    with pytest.raises(StructureError):
        wedge(dx(3, 1), dx(4, 1))
    ring = PolyRing(("a",))
    with pytest.raises(StructureError):
        wedge(dx(3, 1), GradedForm(3, ring, {(1,): 1}))
    with pytest.raises(StructureError):
        interior(dx(3, 1), dx(3, 1))  # form in vector slot
    with pytest.raises(DomainError):
        interior(ev(3, 1, 2), dx(3, 1, 2))  # degree-2 vector in interior
    with pytest.raises(DomainError):
        exp_interior(ev(3, 1), dx(3, 1, 2, 3))  # degree-1 vector in exp
    with pytest.raises(StructureError):
        GradedForm.term(3, (0,))
    with pytest.raises(StructureError):
        GradedForm.term(3, (4,))
