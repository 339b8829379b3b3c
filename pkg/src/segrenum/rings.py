"""Exact sparse multivariate polynomials over arbitrary-precision rationals.

Coefficients are `fractions.Fraction` values (always reduced, positive
denominator).  A polynomial is stored as a mapping from exponent tuples to
nonzero coefficients; the ring context fixes the variable names and the
active monomial order, which determines leading terms and the canonical
text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import RingMismatchError, ZeroPolynomialError


class OrderKind(Enum):
    GREVLEX = "grevlex"
    LEX = "lex"
    BLOCK = "block"


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order compatible with multiplication.

    `block_split` is required for BLOCK orders: the first `block_split`
    variables form the eliminated block, compared (grevlex) before the
    remaining variables.
    """

    kind: OrderKind
    block_split: int | None = None

    def __post_init__(self):
        if self.kind is OrderKind.BLOCK:
            if self.block_split is None or self.block_split < 1:
                raise ValueError("block order requires a positive block_split")
        elif self.block_split is not None:
            raise ValueError("block_split only makes sense for block orders")

    def key_function(self, nvars):
        """Return key(exponents) such that key order == monomial order."""
        if self.kind is OrderKind.LEX:
            return lambda e: e
        if self.kind is OrderKind.GREVLEX:
            return _grevlex_key
        split = self.block_split
        if split >= nvars:
            raise ValueError("block_split must be smaller than the variable count")

        def block_key(e):
            return (_grevlex_key(e[:split]), _grevlex_key(e[split:]))

        return block_key


def _grevlex_key(e):
    total = 0
    for x in e:
        total += x
    return (total, tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder(OrderKind.GREVLEX)
LEX = MonomialOrder(OrderKind.LEX)


def block_order(split):
    return MonomialOrder(OrderKind.BLOCK, split)


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of a single monomial; length equals the ring's nvars."""

    exponents: tuple[int, ...]

    @property
    def degree(self):
        return sum(self.exponents)


# -- raw monomial helpers (exponent tuples) --------------------------------

from operator import add as _add, le as _le, sub as _sub


def mono_mul(a, b):
    return tuple(map(_add, a, b))


def mono_divides(a, b):
    """True iff a | b."""
    return all(map(_le, a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(map(_sub, a, b))


def mono_lcm(a, b):
    return tuple(map(max, a, b))


def mono_degree(a):
    return sum(a)


class PolynomialRing:
    """Ring context: variable names plus the active monomial order."""

    __slots__ = ("variable_names", "order", "_key", "_vars_index")

    def __init__(self, variable_names: Iterable[str], order: MonomialOrder = GREVLEX):
        names = tuple(variable_names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if not names:
            raise ValueError("a ring needs at least one variable")
        self.variable_names = names
        self.order = order
        self._key = order.key_function(len(names))
        self._vars_index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.variable_names)

    def monomial_key(self, order: MonomialOrder | None = None):
        if order is None or order == self.order:
            return self._key
        return order.key_function(self.nvars)

    def with_order(self, order):
        return PolynomialRing(self.variable_names, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.variable_names == other.variable_names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variable_names, self.order))

    def __repr__(self):
        return f"QQ[{', '.join(self.variable_names)}; {self.order.kind.value}]"

    # -- construction -------------------------------------------------------

    def poly(self, coeffs: Mapping[tuple[int, ...], Fraction | int]):
        clean = {}
        for exps, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            exps = tuple(int(x) for x in exps)
            if len(exps) != self.nvars or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent vector {exps} for {self!r}")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        return Polynomial(self, {e: c for e, c in clean.items() if c != 0})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, name_or_index):
        if isinstance(name_or_index, str):
            if name_or_index not in self._vars_index:
                raise ValueError(f"unknown variable {name_or_index!r}")
            i = self._vars_index[name_or_index]
        else:
            i = name_or_index
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def variables(self):
        return [self.variable(i) for i in range(self.nvars)]

    # -- formatting ---------------------------------------------------------

    def format_monomial(self, exps):
        parts = []
        for name, e in zip(self.variable_names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial; no zero coefficients are stored."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: PolynomialRing, coeffs: dict):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = None

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def total_degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(mono_degree(e) for e in self.coeffs)

    @property
    def order_at_origin(self):
        """Minimal total degree of a term (order of vanishing at 0)."""
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no vanishing order")
        return min(mono_degree(e) for e in self.coeffs)

    @property
    def constant_term(self):
        return self.coeffs.get((0,) * self.ring.nvars, Fraction(0))

    @property
    def is_homogeneous(self):
        degs = {mono_degree(e) for e in self.coeffs}
        return len(degs) <= 1

    def terms(self, order: MonomialOrder | None = None):
        """Terms as (coefficient, Monomial), descending in the given order."""
        key = self.ring.monomial_key(order)
        return [
            (self.coeffs[e], Monomial(e))
            for e in sorted(self.coeffs, key=key, reverse=True)
        ]

    def leading_item(self, order: MonomialOrder | None = None):
        """(exponent tuple, coefficient) of the maximal term."""
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        key = self.ring.monomial_key(order)
        e = max(self.coeffs, key=key)
        return e, self.coeffs[e]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: k * c for e, k in self.coeffs.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = mono_mul(e1, e2)
                s = out.get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, var_index):
        out = {}
        for e, c in self.coeffs.items():
            k = e[var_index]
            if k == 0:
                continue
            e2 = list(e)
            e2[var_index] = k - 1
            out[tuple(e2)] = c * k
        return Polynomial(self.ring, out)

    # -- equality / hashing / printing ----------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)}>"


def format_polynomial(p: Polynomial, order: MonomialOrder | None = None) -> str:
    """Canonical text form: terms descending in the active order.

    Deterministic across runs; reparses to an equal polynomial.
    """
    if p.is_zero:
        return "0"
    parts = []
    for coeff, mono in p.terms(order):
        mono_s = p.ring.format_monomial(mono.exponents)
        mag = -coeff if coeff < 0 else coeff
        if not mono_s:
            body = str(mag)
        elif mag == 1:
            body = mono_s
        else:
            body = f"{mag}*{mono_s}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact sum (ring-checked)."""
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product (ring-checked)."""
    return p * q


def leading_term(p: Polynomial, order: MonomialOrder | None = None):
    """(coefficient, Monomial) of the maximal term of a nonzero polynomial."""
    e, c = p.leading_item(order)
    return c, Monomial(e)
