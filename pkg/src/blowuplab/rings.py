"""Exact coefficient rings: arbitrary-precision rationals and sparse polynomials.

A polynomial over variables ``(v_1, ..., v_m)`` is stored as a dict mapping
exponent tuples to nonzero ``Fraction`` coefficients:

    x1^2*x2 + 3/2   ->   {(0, 0): Fraction(3, 2), (2, 1): Fraction(1)}

Keys are kept sorted and zero coefficients are never stored, so equal
polynomials have identical representations.  All arithmetic is exact; float
literals are rejected everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError, ParseError, StructureError

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``; anything else (in particular floats) is rejected."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"not an exact rational: {token!r} (float literals are not accepted)")
    return Fraction(token)


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _display_key(exponents):
    # graded order: total degree first, then lexicographic with earlier
    # variables dominating (so "1 + x2^2 + x3^2" renders in that order)
    return (sum(exponents), tuple(-e for e in exponents))


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Rational] | None = None):
        self.vars = tuple(variables)
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != len(self.vars) or any(e < 0 for e in exps):
                    raise StructureError(f"bad exponent tuple {exps} for variables {self.vars}")
                coeff = Fraction(coeff)
                if coeff:
                    acc = clean.get(exps, Fraction(0)) + coeff
                    if acc:
                        clean[exps] = acc
                    else:
                        clean.pop(exps, None)
        self.terms = dict(sorted(clean.items()))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value: Rational) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, variables: Sequence[str], position: int) -> "Polynomial":
        """The monomial v_position (1-based position)."""
        variables = tuple(variables)
        if not 1 <= position <= len(variables):
            raise StructureError(f"variable position {position} out of range")
        exps = [0] * len(variables)
        exps[position - 1] = 1
        return cls(variables, {tuple(exps): Fraction(1)})

    # -- predicates and accessors ------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def min_degree_in(self, positions: Iterable[int]) -> int:
        """Smallest combined degree of the given (1-based) variables over all monomials."""
        cols = [p - 1 for p in positions]
        if not self.terms:
            raise DomainError("zero polynomial has no minimum degree")
        return min(sum(e[c] for c in cols) for e in self.terms)

    def valuation(self, position: int) -> int:
        """Smallest exponent of variable ``position`` (1-based) over all monomials."""
        if not self.terms:
            raise DomainError("zero polynomial has no valuation")
        return min(e[position - 1] for e in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise StructureError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self.terms)
        for exps, coeff in other.terms.items():
            merged[exps] = merged.get(exps, Fraction(0)) + coeff
        return Polynomial(self.vars, merged)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise StructureError("polynomial powers must be nonnegative integers")
        result = Polynomial.const(self.vars, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    __hash__ = None

    # -- calculus and substitution -------------------------------------------

    def diff(self, position: int) -> "Polynomial":
        col = position - 1
        out = {}
        for exps, coeff in self.terms.items():
            if exps[col]:
                new = list(exps)
                new[col] -= 1
                out[tuple(new)] = coeff * exps[col]
        return Polynomial(self.vars, out)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace each variable by the corresponding image polynomial.

        All images must live over one common variable list, which becomes the
        variable list of the result.
        """
        if len(images) != len(self.vars):
            raise StructureError("substitution needs one image per variable")
        target = images[0].vars if images else ()
        for img in images:
            if img.vars != target:
                raise StructureError("substitution images live over different variables")
        result = Polynomial.zero(target)
        power_cache: dict[tuple[int, int], Polynomial] = {}
        for exps, coeff in self.terms.items():
            term = Polynomial.const(target, coeff)
            for pos, e in enumerate(exps):
                if not e:
                    continue
                key = (pos, e)
                if key not in power_cache:
                    power_cache[key] = images[pos] ** e
                term = term * power_cache[key]
            result = result + term
        return result

    def evaluate(self, values: Sequence[Rational]) -> Fraction:
        if len(values) != len(self.vars):
            raise StructureError("evaluation needs one value per variable")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(vals, exps):
                if e:
                    prod *= v**e
            total += prod
        return total

    def shift_down(self, position: int, amount: int) -> "Polynomial":
        """Divide exactly by ``v_position ** amount``."""
        if amount == 0:
            return self
        col = position - 1
        out = {}
        for exps, coeff in self.terms.items():
            if exps[col] < amount:
                raise DomainError(
                    f"{self} is not divisible by {self.vars[col]}^{amount}"
                )
            new = list(exps)
            new[col] -= amount
            out[tuple(new)] = coeff
        return Polynomial(self.vars, out)

    def restrict_zero(self, position: int) -> "Polynomial":
        """Set variable ``position`` to zero."""
        col = position - 1
        return Polynomial(
            self.vars, {e: c for e, c in self.terms.items() if e[col] == 0}
        )

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rendered = []
        for exps in sorted(self.terms, key=_display_key):
            coeff = self.terms[exps]
            factors = [
                self.vars[i] if e == 1 else f"{self.vars[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            if not factors:
                rendered.append(format_rational(coeff))
            elif coeff == 1:
                rendered.append("*".join(factors))
            elif coeff == -1:
                rendered.append("-" + "*".join(factors))
            else:
                rendered.append("*".join([format_rational(coeff)] + factors))
        out = rendered[0]
        for term in rendered[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


@dataclass(frozen=True)
class Rationals:
    """The coefficient ring of arbitrary-precision rational numbers."""

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise StructureError(f"cannot coerce {value!r} into the rational ring")

    def is_zero(self, element) -> bool:
        return element == 0

    def render(self, element) -> str:
        return format_rational(element)


@dataclass(frozen=True)
class PolyRing:
    """Polynomials over an ordered tuple of named variables, rational coefficients."""

    vars: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise StructureError(f"duplicate variable names: {self.vars}")

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.vars)

    def one(self) -> Polynomial:
        return Polynomial.const(self.vars, 1)

    def const(self, value: Rational) -> Polynomial:
        return Polynomial.const(self.vars, value)

    def variable(self, position: int) -> Polynomial:
        return Polynomial.variable(self.vars, position)

    def named(self, name: str) -> Polynomial:
        if name not in self.vars:
            raise StructureError(f"unknown variable {name!r}; ring has {self.vars}")
        return self.variable(self.vars.index(name) + 1)

    def coerce(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.vars != self.vars:
                raise StructureError(
                    f"polynomial over {value.vars} does not belong to ring over {self.vars}"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        raise StructureError(f"cannot coerce {value!r} into {self}")

    def is_zero(self, element) -> bool:
        return not self.coerce(element)

    def render(self, element) -> str:
        return str(element)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)


CoeffRing = Union[Rationals, PolyRing]

RATIONALS = Rationals()


# -- polynomial expression parser ---------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9~_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match or match.end() == match.start():
            raise ParseError(f"unexpected character {text[pos:]!r} in polynomial")
        if "." in text[pos : match.end()]:
            raise ParseError("float literals are not accepted in polynomials")
        tokens.append(match)
        pos = match.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for +, -, *, ^ and parentheses."""

    def __init__(self, text: str, ring: PolyRing):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _next(self):
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of polynomial expression")
        self.pos += 1
        return token

    def parse(self) -> Polynomial:
        value = self._expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in polynomial: {self.tokens[self.pos].group()!r}")
        return value

    def _expr(self) -> Polynomial:
        sign = 1
        token = self._peek()
        if token is not None and token.group("op") == "-":
            self._next()
            sign = -1
        elif token is not None and token.group("op") == "+":
            self._next()
        value = self._term() * sign
        while True:
            token = self._peek()
            if token is None or token.group("op") not in ("+", "-"):
                return value
            self._next()
            rhs = self._term()
            value = value + rhs if token.group("op") == "+" else value - rhs

    def _term(self) -> Polynomial:
        value = self._factor()
        while True:
            token = self._peek()
            if token is None or token.group("op") != "*":
                return value
            self._next()
            value = value * self._factor()

    def _factor(self) -> Polynomial:
        base = self._base()
        token = self._peek()
        if token is not None and token.group("op") == "^":
            self._next()
            exp_token = self._next()
            rat = exp_token.group("rat")
            if rat is None or "/" in rat:
                raise ParseError("exponents must be nonnegative integers")
            return base ** int(rat)
        return base

    def _base(self) -> Polynomial:
        token = self._next()
        if token.group("rat"):
            return self.ring.const(Fraction(token.group("rat")))
        if token.group("name"):
            name = token.group("name")
            if name not in self.ring.vars:
                raise ParseError(f"unknown variable {name!r}; ring has {self.ring.vars}")
            return self.ring.named(name)
        op = token.group("op")
        if op == "(":
            value = self._expr()
            closing = self._next()
            if closing.group("op") != ")":
                raise ParseError("expected ')' in polynomial")
            return value
        if op == "-":
            return -self._base()
        raise ParseError(f"unexpected token {token.group()!r} in polynomial")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse an expression like ``y1^2*y2 - 3/2`` into the given ring."""
    if not text.strip():
        raise ParseError("empty polynomial expression")
    return _PolyParser(text, ring).parse()
