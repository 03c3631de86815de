"""Exact linear algebra against an independent sympy oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from blowuplab import killing_form, sl2, so3
from blowuplab.linalg import (
    det,
    in_row_space,
    inverse,
    is_negative_definite,
    leading_principal_minors,
    rank,
    rref_basis,
)


def _random_matrix(rng, rows, cols, singularish=False):
    m = [
        [Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(cols)]
        for _ in range(rows)
    ]
    if singularish and rows > 1:
        # force a dependent row to exercise rank deficiency
        m[-1] = [2 * x for x in m[0]]
    return m


def _sympy_matrix(m):
    return sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m]
    )


def test_rank_matches_sympy(rng):
    for trial in range(60):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = _random_matrix(rng, rows, cols, singularish=trial % 3 == 0)
        assert rank(m) == _sympy_matrix(m).rank()


def test_det_matches_sympy(rng):
    for trial in range(40):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n, singularish=trial % 4 == 0)
        assert det(m) == Fraction(str(_sympy_matrix(m).det()))


def test_leading_minors_and_definiteness():
    b_so3 = killing_form(so3())
    minors = leading_principal_minors(b_so3)
    assert minors == [Fraction(-2), Fraction(4), Fraction(-8)]
    assert is_negative_definite(b_so3)
    assert not is_negative_definite(killing_form(sl2()))


def test_rref_basis_spans_and_reduces(rng):
    for _ in range(30):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        basis = rref_basis(m)
        assert len(basis) == rank(m)
        for row in m:
            assert in_row_space(basis, row)
        for row in basis:
            assert in_row_space(m, row)


def test_in_row_space(rng):
    rows = [[Fraction(1), Fraction(0), Fraction(2)], [Fraction(0), Fraction(1), Fraction(-1)]]
    assert in_row_space(rows, [Fraction(2), Fraction(3), Fraction(1)])
    assert not in_row_space(rows, [Fraction(0), Fraction(0), Fraction(1)])


def test_inverse(rng):
    for _ in range(25):
        n = rng.randint(1, 5)
        m = _random_matrix(rng, n, n)
        inv = inverse(m)
        if _sympy_matrix(m).det() == 0:
            assert inv is None
            continue
        assert inv is not None
        prod = [
            [sum(m[i][k] * inv[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        assert prod == [
            [Fraction(int(i == j)) for j in range(n)] for i in range(n)
        ]
