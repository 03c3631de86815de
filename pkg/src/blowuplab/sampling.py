"""Deterministic covector and point sampling.

All randomized suites draw from these streams so that a fixed seed gives a
fixed sequence: the deterministic seed portion (dual basis vectors, then
pairwise sums and differences) comes first, followed by seeded random draws
with rational components (numerators in [-bound, bound], denominators in
{1, 2, 3}; the zero vector is rejected and redrawn).  Strata where the height
drops are coordinate subspaces in natural bases, so the deterministic seeds
visit them before luck is needed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

DEFAULT_SEED = 1729

_DENOMINATORS = (1, 2, 3)


def dual_basis(n: int) -> list[tuple[Fraction, ...]]:
    return [
        tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)
    ]


def pairwise_combinations(n: int) -> list[tuple[Fraction, ...]]:
    """Sums then differences of distinct dual basis vectors."""
    basis = dual_basis(n)
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            out.append(tuple(x + y for x, y in zip(basis[a], basis[b])))
    for a in range(n):
        for b in range(a + 1, n):
            out.append(tuple(x - y for x, y in zip(basis[a], basis[b])))
    return out


def random_vector(rng: random.Random, n: int, bound: int) -> tuple[Fraction, ...]:
    while True:
        vec = tuple(
            Fraction(rng.randint(-bound, bound), rng.choice(_DENOMINATORS))
            for _ in range(n)
        )
        if any(vec):
            return vec


def covector_stream(
    n: int,
    seed: int = DEFAULT_SEED,
    bound: int = 20,
    escalate_every: int | None = None,
) -> Iterator[tuple[Fraction, ...]]:
    """Deterministic seeds first, then an endless seeded random stream.

    With ``escalate_every`` set, the coefficient bound doubles after that
    many random draws (used by the witness search).
    """
    yield from dual_basis(n)
    yield from pairwise_combinations(n)
    rng = random.Random(seed)
    drawn = 0
    while True:
        yield random_vector(rng, n, bound)
        drawn += 1
        if escalate_every and drawn % escalate_every == 0:
            bound *= 2


def point_stream(
    n: int, seed: int = DEFAULT_SEED, bound: int = 20
) -> Iterator[tuple[Fraction, ...]]:
    """Like covector_stream but starting from the origin (points, not covectors)."""
    yield tuple(Fraction(0) for _ in range(n))
    if n:
        yield from covector_stream(n, seed, bound)
