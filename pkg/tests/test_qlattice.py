from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qstab.qlattice import KClass, QLattice, RLinearMap, k_shift, n_reduce
from qstab.quiver import preset
from qstab.ring import ONE, Q, QINV, LaurentInt
from conftest import kclasses, laurents

A2 = QLattice(preset("A2"))
A3 = QLattice(preset("A3"))
a1, a2 = A2.simple(1), A2.simple(2)
ZERO2 = KClass.zero(2)

ADE = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"]


def test_bilinear_form_a2():
    assert A2.bilinear_form_q(a1, a1) == 1 + Q
    assert A2.bilinear_form_q(a1, a2) == LaurentInt.const(-1)
    assert A2.bilinear_form_q(a2, a1) == -Q
    assert A2.bilinear_form_q(a1 + a2, ZERO2).is_zero


def test_euler_form_a2():
    assert A2.euler_form(a1, a2) == LaurentInt.const(-1)
    assert A2.euler_form(a2, a1) == -Q
    assert A2.euler_form(a1, a1) == 1 + Q


def test_reflections_a2():
    assert A2.reflect_q(1, a1) == (-Q) * a1
    assert A2.reflect_q(1, a2) == a2 + Q * a1
    for x in (a1, a2, a1 + a2):
        assert A2.reflect_q_inv(1, A2.reflect_q(1, x)) == x


def test_reflection_is_involution_at_q_one():
    r = A3.reflection_matrix(2).reduce(2)
    n = len(r)
    sq = [[sum(r[i][k] * r[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert sq == [[int(i == j) for j in range(n)] for i in range(n)]


def test_twists_a2():
    assert A2.twist_class(1, a2) == a2 + a1
    assert A2.twist_class_inv(1, a2) == a2 + Q * a1 == A2.reflect_q(1, a2)
    for i in (1, 2):
        e = A2.simple(i)
        assert A2.twist_class(i, e) == (-QINV) * e


def test_braid_word_examples():
    x = KClass([1 + Q, -QINV])
    assert A2.braid_word_apply([], x) == x
    assert A2.braid_word_apply([1, 2, 1], x) == A2.braid_word_apply([2, 1, 2], x)
    assert A2.braid_word_apply([1, -1], x) == x
    assert A2.braid_word_apply([-2, 2], x) == x


def test_word_convention_is_composition():
    x = KClass([ONE, Q])
    assert A2.braid_word_apply([1, 2], x) == A2.twist_class(1, A2.twist_class(2, x))
    assert A2.word_matrix([1, 2]) == A2.twist_matrix(1) @ A2.twist_matrix(2)


@pytest.mark.parametrize("name", ADE)
def test_exact_relations_ade(name):
    lat = QLattice(preset(name))
    assert lat.verify_skew_symmetry()
    assert all(lat.verify_hecke_quadratic(i) for i in lat.quiver.vertices)
    report = lat.verify_braid_relations()
    assert len(report) == lat.quiver.n * (lat.quiver.n - 1) // 2
    assert all(r["status"] == "pass" for r in report)
    assert lat.twist_inverse_is_reflection()
    assert lat.euler_matches_form()


def test_braid_report_a3_d4():
    assert [r["status"] for r in A3.verify_braid_relations()] == ["pass"] * 3
    d4 = QLattice(preset("D4")).verify_braid_relations()
    assert len(d4) == 6 and {r["status"] for r in d4} == {"pass"}


def test_kronecker_no_relation():
    rep = QLattice(preset("Kronecker")).verify_braid_relations()
    assert rep == [{"pair": [1, 2], "relation": "none", "status": "no relation asserted"}]


def test_hecke_at_q_one():
    r = A2.reflection_matrix(1)
    I = RLinearMap.identity(2)
    prod = (r - I) @ (r + I)
    assert all(v == 0 for row in prod.reduce(2) for v in row)


def test_k_shift_examples():
    x = KClass([1 + Q, QINV])
    assert k_shift(x, 0, 0) == x
    assert k_shift(x, 1, 0) == -x
    assert k_shift(x, -2, 1) == Q * x


def test_n_reduce_examples():
    x = Q * a1
    assert n_reduce(x, 2) == (1, 0)
    assert n_reduce(x, 3) == (-1, 0)


def test_inverse_matrices_exact():
    for i in (1, 2, 3):
        t = A3.twist_matrix(i)
        assert t @ t.inverse == RLinearMap.identity(3)
        assert t.inverse @ t == RLinearMap.identity(3)


def test_burau_relations_type_a():
    """Reduced Burau shape: r_i^q satisfies the Hecke quadratic and braid relations."""
    lat = QLattice(preset("A5"))
    R = [lat.reflection_matrix(i) for i in range(1, 6)]
    I = RLinearMap.identity(5)
    q = RLinearMap.scalar(5, Q)
    for i in range(5):
        assert ((-R[i] - q) @ (-R[i] + I)).is_zero()
        for j in range(i + 1, 5):
            if j == i + 1:
                assert R[i] @ R[j] @ R[i] == R[j] @ R[i] @ R[j]
            else:
                assert R[i] @ R[j] == R[j] @ R[i]


@given(kclasses(2), kclasses(2), laurents)
def test_form_bilinearity_and_skew(x, y, c):
    xb, yb = KClass(v.bar() for v in x), KClass(v.bar() for v in y)
    assert A2.bilinear_form_q(y, x) == Q * A2.bilinear_form_q(xb, yb).bar()
    assert A2.bilinear_form_q(c * x, y) == c * A2.bilinear_form_q(x, y)
    assert A2.euler_form(x + y, y) == A2.euler_form(x, y) + A2.euler_form(y, y)


@given(kclasses(3), st.integers(1, 3))
def test_twist_round_trip(x, i):
    assert A3.twist_class_inv(i, A3.twist_class(i, x)) == x
    assert A3.twist_class_inv(i, x) == A3.reflect_q(i, x)


@given(kclasses(3), st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=6), st.sampled_from([2, 3, 4]))
def test_reduction_commutes_with_words(x, word, N):
    lhs = n_reduce(A3.braid_word_apply(word, x), N)
    M = A3.word_matrix(word).reduce(N)
    v = n_reduce(x, N)
    rhs = tuple(sum(M[i][j] * v[j] for j in range(3)) for i in range(3))
    assert lhs == rhs


@given(kclasses(3))
def test_kclass_json_round_trip(x):
    assert KClass.from_json(x.to_json()) == x
