from __future__ import annotations

import json

import pytest

from qstab.quiver import (
    CycleError,
    UnsupportedTypeError,
    build_quiver,
    cartan_at_one,
    coxeter_number,
    load_quiver,
    positive_roots,
    preset,
    q_cartan,
    quiver_from_json,
    relabel,
)
from qstab.ring import Q, LaurentInt

ADE = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8"]


def test_build_a2():
    Q2 = build_quiver(2, [(1, 2)])
    assert Q2.b[0][1] == 1 and Q2.b[1][0] == 0


def test_kronecker_multiplicity():
    K = build_quiver(2, [(1, 2), (1, 2)])
    assert K.arrow_count(1, 2) == 2
    assert preset("Kronecker").arrow_count(1, 2) == 2


def test_cycle_rejected_with_witness():
    with pytest.raises(CycleError) as info:
        build_quiver(2, [(1, 2), (2, 1)])
    assert set(info.value.cycle) == {(1, 2), (2, 1)}


def test_bad_index_rejected():
    with pytest.raises(ValueError):
        build_quiver(2, [(1, 3)])


def test_q_cartan_a2():
    A = q_cartan(preset("A2"))
    assert A == ((1 + Q, LaurentInt.const(-1)), (-Q, 1 + Q))


def test_cartan_at_one_a2():
    assert cartan_at_one(preset("A2")) == [[2, -1], [-1, 2]]


def test_single_vertex():
    assert q_cartan(build_quiver(1, [])) == ((1 + Q,),)


@pytest.mark.parametrize("name", ADE + ["Kronecker"])
def test_q_cartan_skew_symmetry(name):
    A = q_cartan(preset(name))
    n = len(A)
    assert all(A[j][i] == Q * A[i][j].bar() for i in range(n) for j in range(n))


@pytest.mark.parametrize("name", ADE)
def test_cartan_at_one_symmetric(name):
    C = cartan_at_one(preset(name))
    n = len(C)
    assert all(C[i][j] == C[j][i] for i in range(n) for j in range(n))
    assert all(C[i][i] == 2 for i in range(n))


def test_positive_roots_a2():
    rs = positive_roots(preset("A2"))
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("name,count,h", [("A1", 1, 2), ("A2", 3, 3), ("A3", 6, 4), ("D4", 12, 6), ("E6", 36, 12), ("E7", 63, 18), ("E8", 120, 30)])
def test_root_counts_and_coxeter(name, count, h):
    rs = positive_roots(preset(name))
    assert len(rs.positive_roots) == count
    assert coxeter_number(rs) == h
    assert len(rs.positive_roots) * 2 == rs.rank * h


@pytest.mark.parametrize("name", ADE)
def test_root_closure_and_involutions(name):
    rs = positive_roots(preset(name))
    roots = set(rs.positive_roots)
    for r in roots:
        for i in range(1, rs.rank + 1):
            img = rs.reflect(i, r)
            assert img in roots or tuple(-c for c in img) in roots
            assert rs.reflect(i, img) == r


def test_kronecker_has_no_root_system():
    with pytest.raises(UnsupportedTypeError):
        positive_roots(preset("Kronecker"))


def test_type_detection_independent_of_orientation():
    assert build_quiver(3, [(2, 1), (2, 3)]).dynkin_type() == "A3"
    assert build_quiver(4, [(1, 2), (3, 2), (2, 4)]).dynkin_type() == "D4"
    assert preset("Kronecker").dynkin_type() is None


def test_relabel_equivariance():
    D4 = build_quiver(4, [(1, 2), (3, 2), (4, 2)])
    perm = {1: 3, 2: 2, 3: 4, 4: 1}
    A = q_cartan(D4)
    B = q_cartan(relabel(D4, perm))
    for i in range(1, 5):
        for j in range(1, 5):
            assert B[perm[i] - 1][perm[j] - 1] == A[i - 1][j - 1]


def test_json_round_trip(tmp_path):
    Q3 = build_quiver(3, [(1, 2), (3, 2)])
    path = tmp_path / "q.json"
    path.write_text(json.dumps(Q3.to_json()))
    back = load_quiver(str(path))
    assert back.arrows == Q3.arrows and back.n == 3
    assert quiver_from_json({"vertices": 2, "arrows": [[1, 2]]}).b == preset("A2").b
