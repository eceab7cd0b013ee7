from __future__ import annotations

import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qstab.ring import (
    ONE,
    Q,
    QINV,
    LaurentInt,
    LaurentOverflowError,
    format_laurent,
    parse_laurent,
    reduce_at_sign,
    specialize,
)
from conftest import laurents


def test_difference_of_squares():
    assert (1 + Q) * (1 - Q) == 1 - Q * Q


def test_additive_cancellation():
    assert (QINV + 1) + (-1) == QINV


def test_square_expansion():
    assert (1 + Q) * (1 + Q) == LaurentInt({0: 1, 1: 2, 2: 1})


def test_bar_examples():
    assert (1 + Q).bar() == 1 + QINV
    assert LaurentInt.const(5).bar() == LaurentInt.const(5)
    assert (Q**2 - QINV).bar() == Q**-2 - Q


def test_canonical_form_drops_zeros():
    a = LaurentInt({0: 0, 3: 2, -1: 0})
    assert a.coeffs == {3: 2}
    assert Q - Q == LaurentInt()
    assert (Q - Q).is_zero


def test_specialize_examples():
    assert specialize(Q, 1) == -1
    assert specialize(Q, 2) == 1
    assert abs(specialize(1 + Q, 0.5) - (1 + 1j)) < 1e-15


@pytest.mark.parametrize("N", range(-5, 6))
def test_integer_specialization_is_exact_sign(N):
    assert specialize(Q, N) == (-1) ** N
    assert reduce_at_sign(Q, N) == (-1) ** N


def test_overflow_is_loud():
    big = LaurentInt.const(2**62)
    with pytest.raises(LaurentOverflowError):
        big + big
    with pytest.raises(OverflowError):
        big * 4


def test_negative_power_of_non_unit_rejected():
    with pytest.raises(ValueError):
        (1 + Q) ** -1
    assert (-Q) ** -2 == Q**-2


def test_render_and_parse():
    a = LaurentInt({-1: -1, 0: 1, 1: 2})
    text = format_laurent(a)
    assert text == "-q^-1 + 1 + 2*q"
    assert parse_laurent(text) == a
    assert parse_laurent("1 + 2*q - q^-1") == a
    assert format_laurent(LaurentInt()) == "0"
    assert parse_laurent("0").is_zero


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * ONE == a
    assert a - a == LaurentInt()


@given(laurents)
def test_bar_involution(a):
    assert a.bar().bar() == a


@given(laurents)
def test_parse_round_trip(a):
    assert parse_laurent(format_laurent(a)) == a


@given(laurents, laurents, st.floats(-3, 3, allow_nan=False), st.floats(-0.5, 0.5, allow_nan=False))
def test_specialize_is_ring_map(a, b, re, im):
    s = complex(re, im)
    lhs = specialize(a * b, s)
    rhs = specialize(a, s) * specialize(b, s)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


@given(laurents, st.floats(-3, 3, allow_nan=False))
def test_specialize_matches_definition(a, s):
    direct = sum(c * cmath.exp(1j * cmath.pi * s * k) for k, c in a.terms())
    assert abs(specialize(a, s) - direct) <= 1e-12 * max(1.0, abs(direct))
