"""The q-deformed root lattice, identified with K(D_X(Q)) = R^n.

Classes are vectors over the simple basis [S_1], ..., [S_n] with
Laurent-polynomial coordinates.  Linear maps are stored as exact
Laurent matrices whose j-th column is the image of the j-th simple class,
so composition is the ordinary matrix product.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .quiver import QuiverData, cartan_at_one, q_cartan
from .ring import ONE, ZERO, LaurentInt, as_laurent, format_laurent, parse_laurent, reduce_at_sign, specialize


class KClass:
    """An element of K(D_X(Q)) written in the simple basis."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable) -> None:
        self.coords: tuple[LaurentInt, ...] = tuple(as_laurent(c) for c in coords)

    @classmethod
    def zero(cls, n: int) -> KClass:
        return cls([ZERO] * n)

    @classmethod
    def simple(cls, n: int, i: int) -> KClass:
        return cls([ONE if j == i else ZERO for j in range(1, n + 1)])

    @classmethod
    def from_dim(cls, dim: Sequence[int]) -> KClass:
        return cls([LaurentInt.const(d) for d in dim])

    @property
    def n(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> LaurentInt:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def _check(self, other: KClass) -> None:
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: KClass) -> KClass:
        self._check(other)
        return KClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: KClass) -> KClass:
        self._check(other)
        return KClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> KClass:
        return KClass(-a for a in self.coords)

    def scale(self, c) -> KClass:
        c = as_laurent(c)
        return KClass(c * a for a in self.coords)

    def __rmul__(self, c) -> KClass:
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __repr__(self) -> str:
        return "KClass([" + ", ".join(repr(format_laurent(c)) for c in self.coords) + "])"

    def to_json(self) -> list[str]:
        return [format_laurent(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: list[str] | str) -> KClass:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(parse_laurent(s) for s in data)

    def specialize(self, s) -> np.ndarray:
        return np.array([specialize(c, s) for c in self.coords], dtype=complex)


def k_shift(x: KClass, m: int, l: int) -> KClass:
    """Class of E[m + lX] from the class of E: multiply by (-1)^m q^l."""
    return x.scale(LaurentInt.monomial(l, -1 if m % 2 else 1))


def n_reduce(x: KClass, N: int) -> tuple[int, ...]:
    """Push a class down to Z^n by q -> (-1)^N."""
    return tuple(reduce_at_sign(c, N) for c in x.coords)


Matrix = tuple[tuple[LaurentInt, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class RLinearMap:
    """An R-linear endomorphism of R^n, optionally with a known exact inverse."""

    matrix: Matrix
    inverse_matrix: Matrix | None = None

    @classmethod
    def identity(cls, n: int) -> RLinearMap:
        m = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls(m, m)

    @classmethod
    def scalar(cls, n: int, c) -> RLinearMap:
        c = as_laurent(c)
        m = tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n))
        inv = None
        if len(c.terms()) == 1 and abs(c.terms()[0][1]) == 1:
            ci = c ** -1
            inv = tuple(tuple(ci if i == j else ZERO for j in range(n)) for i in range(n))
        return cls(m, inv)

    @classmethod
    def from_columns(cls, cols: Sequence[KClass], inverse_cols: Sequence[KClass] | None = None) -> RLinearMap:
        def build(cs):
            n = len(cs)
            return tuple(tuple(cs[j].coords[i] for j in range(n)) for i in range(n))

        return cls(build(cols), build(inverse_cols) if inverse_cols is not None else None)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def inverse(self) -> RLinearMap:
        if self.inverse_matrix is None:
            raise ValueError("no exact inverse recorded for this map")
        return RLinearMap(self.inverse_matrix, self.matrix)

    def apply(self, x: KClass) -> KClass:
        if x.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {x.n}")
        return KClass(
            sum((self.matrix[i][j] * x.coords[j] for j in range(self.n)), ZERO) for i in range(self.n)
        )

    def __matmul__(self, other):
        if isinstance(other, KClass):
            return self.apply(other)
        if isinstance(other, RLinearMap):
            inv = None
            if self.inverse_matrix is not None and other.inverse_matrix is not None:
                inv = _matmul(other.inverse_matrix, self.inverse_matrix)
            return RLinearMap(_matmul(self.matrix, other.matrix), inv)
        return NotImplemented

    def __add__(self, other: RLinearMap) -> RLinearMap:
        return RLinearMap(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix))
        )

    def __sub__(self, other: RLinearMap) -> RLinearMap:
        return RLinearMap(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix))
        )

    def __neg__(self) -> RLinearMap:
        return RLinearMap(tuple(tuple(-a for a in r) for r in self.matrix), None)

    def __pow__(self, e: int) -> RLinearMap:
        base = self if e >= 0 else self.inverse
        out = RLinearMap.identity(self.n)
        for _ in range(abs(e)):
            out = out @ base
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RLinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def is_zero(self) -> bool:
        return all(not a for r in self.matrix for a in r)

    def column(self, j: int) -> KClass:
        return KClass(self.matrix[i][j - 1] for i in range(self.n))

    def specialize(self, s) -> np.ndarray:
        """Complex matrix at q = exp(i*pi*s)."""
        return np.array([[specialize(a, s) for a in r] for r in self.matrix], dtype=complex)

    def at_q(self, q: complex) -> np.ndarray:
        return np.array([[complex(a.evaluate(q)) if a else 0j for a in r] for r in self.matrix], dtype=complex)

    def reduce(self, N: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(reduce_at_sign(a, N) for a in r) for r in self.matrix)

    def to_json(self) -> list[list[str]]:
        return [[format_laurent(a) for a in r] for r in self.matrix]

    def __repr__(self) -> str:
        return f"RLinearMap({self.to_json()})"


def int_matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


class QLattice:
    """Lattice data attached to an acyclic quiver.

    The Euler form is linear in the first slot and q -> q^-1 semilinear in
    the second, matching chi(E[X], F) = q chi(E, F) and
    chi(E, F[X]) = q^-1 chi(E, F).  On simple classes it agrees with the
    q-deformed bilinear form, which is R-bilinear.
    """

    def __init__(self, quiver: QuiverData) -> None:
        self.quiver = quiver
        self.n = quiver.n
        self.cartan = q_cartan(quiver)
        self.cartan1 = cartan_at_one(quiver)

    def simple(self, i: int) -> KClass:
        return KClass.simple(self.n, i)

    def _check(self, *xs: KClass) -> None:
        for x in xs:
            if x.n != self.n:
                raise ValueError(f"dimension mismatch: class of rank {x.n} on a rank-{self.n} lattice")

    def bilinear_form_q(self, x: KClass, y: KClass) -> LaurentInt:
        self._check(x, y)
        total = ZERO
        for i in range(self.n):
            if not x.coords[i]:
                continue
            for j in range(self.n):
                if y.coords[j] and self.cartan[i][j]:
                    total = total + x.coords[i] * y.coords[j] * self.cartan[i][j]
        return total

    def chi0(self, i: int, j: int) -> int:
        """Euler form of the path algebra on simples: delta_ij - b_ij."""
        return int(i == j) - self.quiver.b[i - 1][j - 1]

    def euler_form(self, x: KClass, y: KClass) -> LaurentInt:
        self._check(x, y)
        q = LaurentInt.monomial(1)
        total = ZERO
        for i in range(self.n):
            for j in range(self.n):
                pair = self.chi0(i + 1, j + 1) + q * self.chi0(j + 1, i + 1)
                if pair and x.coords[i] and y.coords[j]:
                    total = total + x.coords[i] * y.coords[j].bar() * pair
        return total

    def reflect_q(self, i: int, x: KClass) -> KClass:
        return x - self.simple(i).scale(self.bilinear_form_q(x, self.simple(i)))

    def reflect_q_inv(self, i: int, x: KClass) -> KClass:
        # (alpha_i, x) evaluated with the form at q^-1, i.e. matrix entries barred
        pair = sum((self.cartan[i - 1][j].bar() * x.coords[j] for j in range(self.n)), ZERO)
        return x - self.simple(i).scale(pair)

    def twist_class(self, i: int, x: KClass) -> KClass:
        return x - self.simple(i).scale(self.euler_form(self.simple(i), x).bar())

    def twist_class_inv(self, i: int, x: KClass) -> KClass:
        return x - self.simple(i).scale(self.euler_form(x, self.simple(i)))

    def _basis_map(self, f, finv) -> RLinearMap:
        cols = [f(self.simple(j)) for j in range(1, self.n + 1)]
        icols = [finv(self.simple(j)) for j in range(1, self.n + 1)]
        return RLinearMap.from_columns(cols, icols)

    @cached_property
    def _reflections(self) -> tuple[RLinearMap, ...]:
        return tuple(
            self._basis_map(lambda x, i=i: self.reflect_q(i, x), lambda x, i=i: self.reflect_q_inv(i, x))
            for i in range(1, self.n + 1)
        )

    @cached_property
    def _twists(self) -> tuple[RLinearMap, ...]:
        return tuple(
            self._basis_map(lambda x, i=i: self.twist_class(i, x), lambda x, i=i: self.twist_class_inv(i, x))
            for i in range(1, self.n + 1)
        )

    def reflection_matrix(self, i: int) -> RLinearMap:
        return self._reflections[i - 1]

    def twist_matrix(self, i: int) -> RLinearMap:
        return self._twists[i - 1]

    def generator(self, g: int) -> RLinearMap:
        if g == 0 or abs(g) > self.n:
            raise ValueError(f"generator index {g} out of range for rank {self.n}")
        t = self.twist_matrix(abs(g))
        return t if g > 0 else t.inverse

    def word_matrix(self, word: Sequence[int]) -> RLinearMap:
        """Matrix of the braid word g1 g2 ... gk, i.e. Phi_g1 o Phi_g2 o ... o Phi_gk.

        A negative entry -i stands for the inverse twist.
        """
        out = RLinearMap.identity(self.n)
        for g in word:
            out = out @ self.generator(g)
        return out

    def braid_word_apply(self, word: Sequence[int], x: KClass) -> KClass:
        self._check(x)
        for g in reversed(list(word)):
            x = self.twist_class(g, x) if g > 0 else self.twist_class_inv(-g, x)
        return x

    def reduced_generator(self, g: int, N: int) -> tuple[tuple[int, ...], ...]:
        return self.generator(g).reduce(N)

    def verify_braid_relations(self) -> list[dict]:
        report = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                a = self.cartan1[i - 1][j - 1]
                P, R = self.twist_matrix(i), self.twist_matrix(j)
                if a == 0:
                    ok = (P @ R) == (R @ P)
                    report.append({"pair": [i, j], "relation": "commute", "status": "pass" if ok else "fail"})
                elif a == -1:
                    ok = (P @ R @ P) == (R @ P @ R)
                    report.append({"pair": [i, j], "relation": "braid", "status": "pass" if ok else "fail"})
                else:
                    report.append({"pair": [i, j], "relation": "none", "status": "no relation asserted"})
        return report

    def verify_hecke_quadratic(self, i: int) -> bool:
        """(-r - q)(-r + 1) == 0 for the q-reflection r at vertex i, exactly."""
        r = self.reflection_matrix(i)
        ident = RLinearMap.identity(self.n)
        qid = RLinearMap.scalar(self.n, LaurentInt.monomial(1))
        return ((-r - qid) @ (-r + ident)).is_zero()

    def verify_skew_symmetry(self) -> bool:
        """A(q)^T == q * A(q^-1) entrywise."""
        q = LaurentInt.monomial(1)
        return all(
            self.cartan[j][i] == q * self.cartan[i][j].bar() for i in range(self.n) for j in range(self.n)
        )

    def euler_matches_form(self) -> bool:
        return all(
            self.euler_form(self.simple(i), self.simple(j)) == self.bilinear_form_q(self.simple(i), self.simple(j))
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 1)
        )

    def twist_inverse_is_reflection(self) -> bool:
        return all(
            self.twist_matrix(i).inverse == self.reflection_matrix(i) for i in range(1, self.n + 1)
        )
