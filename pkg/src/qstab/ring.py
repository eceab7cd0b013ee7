"""Exact Laurent polynomials in ``q`` with integer coefficients.

Coefficients are checked against a signed 64-bit range; anything outside
raises :class:`LaurentOverflowError` instead of silently growing.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class LaurentOverflowError(OverflowError):
    pass


def _checked(c: int) -> int:
    if c < INT_MIN or c > INT_MAX:
        raise LaurentOverflowError(f"coefficient {c} exceeds 64-bit range")
    return c


Scalar = Union[int, "LaurentInt"]


class LaurentInt:
    """An element of Z[q, q^-1], stored as ``{exponent: nonzero coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        terms = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(c, int) or not isinstance(k, int):
                raise TypeError("exponents and coefficients must be integers")
            if c:
                terms[k] = _checked(c)
        self._terms: tuple[tuple[int, int], ...] = tuple(sorted(terms.items()))
        self._hash = hash(self._terms)

    @classmethod
    def const(cls, c: int) -> LaurentInt:
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, c: int = 1) -> LaurentInt:
        return cls({exp: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeff(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self) -> list[int]:
        return [k for k, _ in self._terms]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentInt.const(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: Scalar) -> LaurentInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms:
            out[k] = _checked(out.get(k, 0) + c)
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentInt:
        return LaurentInt({k: -c for k, c in self._terms})

    def __sub__(self, other: Scalar) -> LaurentInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentInt:
        return (-self) + other

    def __mul__(self, other: Scalar) -> LaurentInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                k = k1 + k2
                out[k] = _checked(out.get(k, 0) + _checked(c1 * c2))
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentInt:
        if e < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only units ±q^k can be inverted")
            k, c = self._terms[0]
            return LaurentInt({k * e: c ** (-e)})
        result = LaurentInt.const(1)
        for _ in range(e):
            result = result * self
        return result

    def bar(self) -> LaurentInt:
        """The involution q -> q^-1."""
        return LaurentInt({-k: c for k, c in self._terms})

    def specialize(self, s: complex) -> complex:
        """Evaluate at q = exp(i*pi*s)."""
        return specialize(self, s)

    def evaluate(self, q: complex | int | Fraction):
        """Evaluate at an explicit value of q (exact for int/Fraction q != 0)."""
        total = 0
        for k, c in self._terms:
            if isinstance(q, (int, Fraction)) and not isinstance(q, bool):
                total += c * Fraction(q) ** k
            else:
                total += c * q**k
        return total

    def __repr__(self) -> str:
        return f"LaurentInt({format_laurent(self)!r})"

    def __str__(self) -> str:
        return format_laurent(self)


def _coerce(x: object) -> LaurentInt | None:
    if isinstance(x, LaurentInt):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return LaurentInt.const(x)
    return None


ZERO = LaurentInt()
ONE = LaurentInt.const(1)
Q = LaurentInt.monomial(1)
QINV = LaurentInt.monomial(-1)


def bar(a: LaurentInt) -> LaurentInt:
    return a.bar()


def specialize(a: LaurentInt, s: complex) -> complex:
    """Sum of c_k * exp(i*pi*s*k).

    Integer ``s`` is treated exactly: q becomes (-1)**s and the result has
    zero imaginary part.
    """
    if isinstance(s, complex) and s.imag == 0:
        s = s.real
    if not isinstance(s, complex) and float(s).is_integer():
        return complex(reduce_at_sign(a, int(s)), 0.0)
    if isinstance(s, Fraction):
        s = float(s)
    total = 0j
    for k, c in a.terms():
        total += c * cmath.exp(1j * math.pi * s * k)
    return total


def reduce_at_sign(a: LaurentInt, N: int) -> int:
    """Evaluate at q = (-1)**N, exactly."""
    sign = -1 if N % 2 else 1
    return sum(c * (sign if k % 2 else 1) for k, c in a.terms())


def format_laurent(a: LaurentInt) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for k, c in a.terms():
        if k == 0:
            mono = ""
        elif k == 1:
            mono = "q"
        else:
            mono = f"q^{k}"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*(?P<q1>q)(?:\s*\^\s*(?P<e1>[+-]?\d+))?)?
          |
          (?P<q2>q)(?:\s*\^\s*(?P<e2>[+-]?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentInt:
    """Inverse of :func:`format_laurent`; terms may come in any order."""
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos = 0
    out: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            if m.group("q1"):
                e = int(m.group("e1")) if m.group("e1") is not None else 1
            else:
                e = 0
        else:
            c = 1
            e = int(m.group("e2")) if m.group("e2") is not None else 1
        out[e] = _checked(out.get(e, 0) + sign * c)
        pos = m.end()
        first = False
    return LaurentInt(out)


def as_laurent(x: Scalar | str) -> LaurentInt:
    if isinstance(x, str):
        return parse_laurent(x)
    c = _coerce(x)
    if c is None:
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")
    return c


def lsum(items: Iterable[LaurentInt]) -> LaurentInt:
    total = ZERO
    for x in items:
        total = total + x
    return total
