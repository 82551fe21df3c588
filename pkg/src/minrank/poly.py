"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`PolyRing` fixes the variables, their precedence (earlier means
larger) and a monomial order.  Monomials are exponent tuples aligned with
``ring.variables``; a :class:`Polynomial` keeps its terms sorted by
decreasing monomial, so the leading term is always ``terms[0]``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm as _int_lcm
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

Monomial = tuple[int, ...]
Coefficient = int | Fraction


class VarKind(enum.Enum):
    DIAG = "x"
    EDGE = "y"
    EDGE_INV = "yh"


class Variable(NamedTuple):
    """A matrix variable: ``x_i`` on the diagonal, ``y_ij`` on edge ``{i,j}``,
    and ``yh_ij`` for the auxiliary inverse of ``y_ij``."""

    kind: VarKind
    index: int | tuple[int, int]

    @property
    def name(self) -> str:
        if self.kind is VarKind.DIAG:
            return f"x{self.index}"
        i, j = self.index
        return f"{self.kind.value}{i}_{j}"

    def __str__(self) -> str:
        return self.name


def x(i: int) -> Variable:
    return Variable(VarKind.DIAG, i)


def y(i: int, j: int) -> Variable:
    return Variable(VarKind.EDGE, (min(i, j), max(i, j)))


def yh(i: int, j: int) -> Variable:
    return Variable(VarKind.EDGE_INV, (min(i, j), max(i, j)))


class RingMismatchError(ValueError):
    pass


# -- monomials --------------------------------------------------------------

def divides(m1: Monomial, m2: Monomial) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def mono_div(m1: Monomial, m2: Monomial) -> Monomial:
    """``m1 / m2``; the caller guarantees ``m2 | m1``."""
    return tuple(a - b for a, b in zip(m1, m2))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex`` or ``lex``; variable precedence is the ring's variable order."""

    scheme: str = "grevlex"

    def __post_init__(self) -> None:
        if self.scheme not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.scheme!r}")

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        if self.scheme == "lex":
            return m
        # Higher degree wins; ties go to the smaller exponent in the last variable.
        return (sum(m),) + tuple(-e for e in reversed(m))


class PolyRing:
    """Polynomial ring over Q in the given variables."""

    def __init__(self, variables: Sequence[Hashable], order: str | MonomialOrder = "grevlex"):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate ring variables")
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.names = {str(v): i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)
        self.one_monomial: Monomial = (0,) * self.nvars
        self._key = self.order.key

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.order))

    def __repr__(self) -> str:
        names = ",".join(str(v) for v in self.variables)
        return f"PolyRing({names}; {self.order.scheme})"

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.variables, order)

    def var_index(self, v) -> int:
        if v in self.index:
            return self.index[v]
        if isinstance(v, str) and v in self.names:
            return self.names[v]
        raise KeyError(f"{v} is not a variable of {self!r}")

    def gen(self, v) -> "Polynomial":
        i = self.var_index(v)
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    @property
    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def constant(self, c: Coefficient) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def from_dict(self, terms: Mapping[Monomial, Coefficient]) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def sort_key(self, m: Monomial):
        return self._key(m)


def _clean(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Immutable polynomial; ``terms`` is a tuple of ``(monomial, coeff)``
    sorted by strictly decreasing monomial under the ring order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Coefficient] | Iterable = ()):
        self.ring = ring
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Coefficient] = {}
        for m, c in items:
            if len(m) != ring.nvars:
                raise ValueError(f"monomial {m} has wrong length for {ring!r}")
            acc[m] = acc.get(m, 0) + c
        key = ring._key
        self.terms = tuple(
            sorted(((m, _clean(c)) for m, c in acc.items() if c), key=lambda t: key(t[0]), reverse=True)
        )
        self._hash = None

    @classmethod
    def _from_sorted(cls, ring: PolyRing, terms: tuple) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic queries --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def as_dict(self) -> dict[Monomial, Coefficient]:
        return dict(self.terms)

    def coefficient(self, m: Monomial) -> Coefficient:
        return self.as_dict().get(m, 0)

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def variables(self) -> tuple:
        used = {i for m, _ in self.terms for i, e in enumerate(m) if e}
        return tuple(self.ring.variables[i] for i in sorted(used))

    def leading_term(self) -> tuple[Coefficient, Monomial]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m, c = self.terms[0]
        return c, m

    @property
    def leading_monomial(self) -> Monomial:
        return self.leading_term()[1]

    @property
    def leading_coefficient(self) -> Coefficient:
        return self.leading_term()[0]

    # -- arithmetic --

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_sorted(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial._from_sorted(
                self.ring, tuple((m, _clean(c * other)) for m, c in self.terms)
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, c: Coefficient, m: Monomial) -> "Polynomial":
        """Multiply by the single term ``c * m`` (order is preserved)."""
        if not c:
            return self.ring.zero()
        return Polynomial._from_sorted(
            self.ring,
            tuple((tuple(a + b for a, b in zip(mm, m)), _clean(cc * c)) for mm, cc in self.terms),
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- normalization and evaluation --

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive over Z."""
        if not self.terms:
            raise ValueError("the zero polynomial has no content")
        coeffs = [Fraction(c) for _, c in self.terms]
        den = _fold(_int_lcm, (c.denominator for c in coeffs), 1)
        num = _fold(gcd, (c.numerator for c in coeffs), 0)
        return Fraction(num, den)

    def normalize(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            raise ValueError("cannot normalize the zero polynomial")
        c = self.content()
        if self.terms[0][1] < 0:
            c = -c
        return Polynomial._from_sorted(
            self.ring, tuple((m, _clean(Fraction(cc) / c)) for m, cc in self.terms)
        )

    def is_normalized(self) -> bool:
        return bool(self.terms) and self == self.normalize()

    def _values(self, assignment: Mapping) -> dict[int, Fraction]:
        values = {}
        for k, v in assignment.items():
            values[self.ring.var_index(k)] = v
        return values

    def evaluate(self, assignment: Mapping) -> Coefficient:
        """Exact value at a point; keys are variables or their names."""
        values = self._values(assignment)
        total: Coefficient = 0
        for m, c in self.terms:
            term = c
            for i, e in enumerate(m):
                if e:
                    if i not in values:
                        raise KeyError(f"no value for variable {self.ring.variables[i]}")
                    term = term * values[i] ** e
            total += term
        return _clean(Fraction(total)) if isinstance(total, Fraction) else total

    def substitute(self, assignment: Mapping) -> "Polynomial":
        """Replace some variables by constants; the ring is unchanged."""
        values = self._values(assignment)
        acc: dict[Monomial, Coefficient] = {}
        for m, c in self.terms:
            mm = list(m)
            for i, v in values.items():
                e = mm[i]
                if e:
                    c = c * v ** e
                    mm[i] = 0
            if c:
                key = tuple(mm)
                acc[key] = acc.get(key, 0) + c
        return Polynomial(self.ring, acc)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in a ring that contains every variable used here."""
        perm = [ring.var_index(v) for v in self.ring.variables]
        acc = {}
        for m, c in self.terms:
            mm = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    mm[perm[i]] = e
            acc[tuple(mm)] = c
        return Polynomial(ring, acc)

    # -- rendering --

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for v, e in zip(ring.variables, m):
        if e == 1:
            parts.append(str(v))
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Render as e.g. ``3*x0*y0_2^2 - y0_1``."""
    if not f.terms:
        return "0"
    out = []
    for idx, (m, c) in enumerate(f.terms):
        neg = c < 0
        mag = -c if neg else c
        mono = format_monomial(f.ring, m)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial` (no parentheses)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ring.zero()
    acc: dict[Monomial, Coefficient] = {}
    pos = 0
    while pos < len(s):
        match = _TERM_RE.match(s, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff: Coefficient = sign
        mono = [0] * ring.nvars
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff = coeff * Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            e = int(power) if power else 1
            try:
                mono[ring.names[name]] += e
            except KeyError:
                raise ValueError(f"unknown variable {name!r}") from None
        key = tuple(mono)
        acc[key] = acc.get(key, 0) + coeff
    return Polynomial(ring, acc)
