"""Thin representations of type-A quivers.

Every indecomposable of an A_n path algebra is an interval module: k at each
vertex of a connected segment of the path, identity maps along arrows inside
the segment.  Quotients of interval modules are direct sums of intervals, so
the working object here is a *thin* module given by an arbitrary support set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .quiver import QuiverData, UnsupportedTypeError, dynkin_type, path_order


@dataclass(frozen=True)
class ThinModule:
    quiver: QuiverData
    support: frozenset[int]

    @property
    def dim(self) -> tuple[int, ...]:
        return tuple(int(v in self.support) for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return len(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def inner_arrows(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.quiver.arrows if u in self.support and v in self.support]

    @cached_property
    def is_interval(self) -> bool:
        order = path_order(self.quiver)
        pos = sorted(order.index(v) for v in self.support)
        return bool(pos) and pos == list(range(pos[0], pos[-1] + 1))

    @property
    def name(self) -> str:
        if not self.support:
            return "0"
        order = path_order(self.quiver)
        pos = sorted(order.index(v) for v in self.support)
        if len(pos) == 1:
            return f"S{order[pos[0]]}"
        if self.is_interval:
            a, b = order[pos[0]], order[pos[-1]]
            return f"M[{min(a, b)},{max(a, b)}]"
        return "+".join(ThinModule(self.quiver, frozenset(c)).name for c in self.components())

    def components(self) -> list[frozenset[int]]:
        """Supports of the interval summands."""
        order = path_order(self.quiver)
        comps, cur = [], []
        for v in order:
            if v in self.support:
                cur.append(v)
            elif cur:
                comps.append(frozenset(cur))
                cur = []
        if cur:
            comps.append(frozenset(cur))
        return comps

    def __repr__(self) -> str:
        return self.name


IntervalModule = ThinModule


def _require_type_a(Q: QuiverData) -> None:
    t = dynkin_type(Q)
    if t is None or t[0] != "A":
        raise UnsupportedTypeError("explicit module computations are implemented for type A only")


def interval(Q: QuiverData, i: int, j: int) -> ThinModule:
    """The interval module on the path segment between vertices i and j."""
    order = path_order(Q)
    a, b = sorted((order.index(i), order.index(j)))
    return ThinModule(Q, frozenset(order[a : b + 1]))


def simple_module(Q: QuiverData, i: int) -> ThinModule:
    return ThinModule(Q, frozenset([i]))


def module_from_dim(Q: QuiverData, dim) -> ThinModule:
    if any(d not in (0, 1) for d in dim):
        raise ValueError(f"{dim} is not the dimension vector of a thin module")
    return ThinModule(Q, frozenset(v for v, d in zip(Q.vertices, dim) if d))


def indecomposables(Q: QuiverData) -> list[ThinModule]:
    """All n(n+1)/2 interval modules, ordered by length then position."""
    _require_type_a(Q)
    order = path_order(Q)
    n = Q.n
    return [
        ThinModule(Q, frozenset(order[a : a + length]))
        for length in range(1, n + 1)
        for a in range(n - length + 1)
    ]


def is_submodule_support(M: ThinModule, U: frozenset[int]) -> bool:
    return U <= M.support and all(v in U for u, v in M.inner_arrows() if u in U)


def submodule_supports(M: ThinModule) -> list[frozenset[int]]:
    """Successor-closed subsets of the support (includes 0 and M)."""
    verts = sorted(M.support)
    out = []
    for r in range(len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            U = frozenset(combo)
            if is_submodule_support(M, U):
                out.append(U)
    return out


def submodules(M: ThinModule) -> list[tuple[int, ...]]:
    return [tuple(int(v in U) for v in M.quiver.vertices) for U in submodule_supports(M)]


def quotient(M: ThinModule, U: frozenset[int]) -> ThinModule:
    if not is_submodule_support(M, U):
        raise ValueError(f"{sorted(U)} is not a submodule of {M}")
    return ThinModule(M.quiver, M.support - U)


def representation(M: ThinModule) -> tuple[dict[int, int], list[list[list[int]]]]:
    """Vertex dimensions and one matrix per arrow (in quiver arrow order)."""
    dims = {v: int(v in M.support) for v in M.quiver.vertices}
    mats = []
    for u, v in M.quiver.arrows:
        if dims[u] and dims[v]:
            mats.append([[1]])
        else:
            mats.append([[0] * dims[u] for _ in range(dims[v])])
    return dims, mats


def _f2_subspaces(d: int) -> list[frozenset[tuple[int, ...]]]:
    vecs = list(itertools.product((0, 1), repeat=d))
    subs = set()
    for r in range(len(vecs) + 1):
        for gens in itertools.combinations(vecs, r):
            span = {tuple([0] * d)}
            for g in gens:
                span |= {tuple((a + b) % 2 for a, b in zip(x, g)) for x in span}
            subs.add(frozenset(span))
    return sorted(subs, key=len)


def submodules_f2_bruteforce(M: ThinModule) -> list[tuple[int, ...]]:
    """Subrepresentations over F_2 found by explicit subspace search.

    Independent of the successor-closure rule: every tuple of subspaces is
    tested for stability under the arrow matrices of the representation.
    """
    dims, mats = representation(M)
    verts = list(M.quiver.vertices)
    choices = [_f2_subspaces(dims[v]) for v in verts]
    found = set()
    for combo in itertools.product(*choices):
        sub = dict(zip(verts, combo))
        ok = True
        for (u, v), mat in zip(M.quiver.arrows, mats):
            for x in sub[u]:
                image = tuple(sum(mat[r][c] * x[c] for c in range(dims[u])) % 2 for r in range(dims[v]))
                if image not in sub[v]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.add(tuple((len(sub[v]).bit_length() - 1) for v in verts))
    return sorted(found)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / p
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def hom_dim(M: ThinModule, N: ThinModule) -> int:
    """dim Hom(M, N) by solving the intertwiner equations exactly."""
    if M.quiver != N.quiver:
        raise ValueError("modules live over different quivers")
    dM, aM = representation(M)
    dN, aN = representation(N)
    variables = {}
    for v in M.quiver.vertices:
        for r in range(dN[v]):
            for c in range(dM[v]):
                variables[(v, r, c)] = len(variables)
    if not variables:
        return 0
    eqs = []
    # for u -> v: N_a f_u - f_v M_a = 0, an identity in Hom(M_u, N_v)
    for (u, v), ma, na in zip(M.quiver.arrows, aM, aN):
        for r in range(dN[v]):
            for c in range(dM[u]):
                row = [Fraction(0)] * len(variables)
                for t in range(dN[u]):
                    if na[r][t]:
                        row[variables[(u, t, c)]] += na[r][t]
                for t in range(dM[v]):
                    if ma[t][c]:
                        row[variables[(v, r, t)]] -= ma[t][c]
                eqs.append(row)
    return len(variables) - _rank(eqs)


def hom_dim_combinatorial(M: ThinModule, N: ThinModule) -> int:
    """Overlap rule for interval modules.

    Hom(M, N) is one-dimensional when the overlap K of the supports is
    nonempty, K is a quotient of M (M minus K is a submodule) and K is a
    submodule of N; otherwise it vanishes.
    """
    K = M.support & N.support
    if not K:
        return 0
    return int(is_submodule_support(M, M.support - K) and is_submodule_support(N, K))


def chi0(Q: QuiverData, x, y) -> int:
    """Euler form of kQ on dimension vectors: sum x_i y_i - sum over arrows x_u y_v."""
    total = sum(a * b for a, b in zip(x, y))
    for u, v in Q.arrows:
        total -= x[u - 1] * y[v - 1]
    return total


def ext_dim(M: ThinModule, N: ThinModule) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - chi0(dim M, dim N) (kQ is hereditary)."""
    return hom_dim(M, N) - chi0(M.quiver, M.dim, N.dim)
