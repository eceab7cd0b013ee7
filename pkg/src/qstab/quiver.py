"""Acyclic quivers, ADE presets, q-Cartan matrices and root systems.

Vertices are 1-indexed throughout.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx

from .ring import ONE, ZERO, LaurentInt
from .ring import Q as QVAR


class QuiverError(ValueError):
    pass


class CycleError(QuiverError):
    def __init__(self, cycle: list[tuple[int, int]]):
        self.cycle = cycle
        path = " -> ".join(str(u) for u, _ in cycle) + f" -> {cycle[0][0]}"
        super().__init__(f"quiver has an oriented cycle: {path}")


class UnsupportedTypeError(QuiverError):
    pass


@dataclass(frozen=True)
class QuiverData:
    n: int
    arrows: tuple[tuple[int, int], ...]
    name: str = ""
    b: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        counts = Counter(self.arrows)
        b = [[0] * self.n for _ in range(self.n)]
        for (i, j), c in counts.items():
            b[i - 1][j - 1] = c
        object.__setattr__(self, "b", tuple(tuple(r) for r in b))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrow_count(self, i: int, j: int) -> int:
        return self.b[i - 1][j - 1]

    def underlying_graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arrows)
        return g

    def dynkin_type(self) -> str | None:
        return dynkin_type(self)

    def to_json(self) -> dict:
        return {"vertices": self.n, "arrows": [list(a) for a in self.arrows]}


def build_quiver(n: int, arrows, name: str = "") -> QuiverData:
    """Validate and build a quiver; raises :class:`CycleError` with a witness."""
    if n < 1:
        raise QuiverError("a quiver needs at least one vertex")
    arrows = tuple((int(i), int(j)) for i, j in arrows)
    for i, j in arrows:
        if not (1 <= i <= n and 1 <= j <= n):
            raise QuiverError(f"arrow {(i, j)} has a vertex outside 1..{n}")
        if i == j:
            raise CycleError([(i, j)])
    g = nx.DiGraph()
    g.add_nodes_from(range(1, n + 1))
    g.add_edges_from(arrows)
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise CycleError([(u, v) for u, v in cycle])
    return QuiverData(n, arrows, name)


def quiver_from_json(data: dict | str | Path) -> QuiverData:
    if isinstance(data, (str, Path)) and Path(data).exists():
        data = json.loads(Path(data).read_text())
    elif isinstance(data, str):
        data = json.loads(data)
    return build_quiver(int(data["vertices"]), data["arrows"])


_PRESET = re.compile(r"^([ADE])(\d+)$")


def preset(name: str) -> QuiverData:
    """ADE presets ("A3", "D4", "E8") and "Kronecker".

    A_n is linearly oriented 1->2->...->n.  D_n is the chain
    1->...->n-2 with n-2 -> n-1 and n-2 -> n.  E_n is the chain
    1->...->n-1 with the extra vertex n attached to vertex 3.
    """
    if name.lower() == "kronecker":
        return build_quiver(2, [(1, 2), (1, 2)], "Kronecker")
    m = _PRESET.match(name.strip().upper())
    if not m:
        raise QuiverError(f"unknown quiver preset {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A":
        if n < 1:
            raise QuiverError("A_n needs n >= 1")
        arrows = [(i, i + 1) for i in range(1, n)]
    elif kind == "D":
        if n < 4:
            raise QuiverError("D_n needs n >= 4")
        arrows = [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    else:
        if n not in (6, 7, 8):
            raise QuiverError("E_n needs n in {6, 7, 8}")
        arrows = [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
    return build_quiver(n, arrows, f"{kind}{n}")


def load_quiver(spec: str) -> QuiverData:
    """Resolve a preset name or a path to a quiver JSON file."""
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        return quiver_from_json(p)
    return preset(spec)


def dynkin_type(Q: QuiverData) -> str | None:
    """Detect the ADE type of the underlying graph, or None if not Dynkin."""
    g = Q.underlying_graph()
    if g.number_of_edges() != len(set(frozenset(a) for a in Q.arrows)):
        return None
    simple = nx.Graph(g)
    if not nx.is_tree(simple):
        return None
    n = Q.n
    degrees = dict(simple.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or degrees[branch[0]] > 3:
        return None
    c = branch[0]
    arms = []
    for nb in simple.neighbors(c):
        length, prev, cur = 1, c, nb
        while True:
            nxt = [w for w in simple.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def path_order(Q: QuiverData) -> list[int]:
    """Vertices of a type-A quiver in the order they occur along the path."""
    t = dynkin_type(Q)
    if t is None or t[0] != "A":
        raise UnsupportedTypeError(f"quiver {Q.name or Q.to_json()} is not of type A")
    if Q.n == 1:
        return [1]
    g = nx.Graph(Q.underlying_graph())
    ends = sorted(v for v, d in g.degree() if d == 1)
    return list(nx.shortest_path(g, ends[0], ends[1]))


def q_cartan(Q: QuiverData) -> tuple[tuple[LaurentInt, ...], ...]:
    """a(q)_ij = delta_ij + q delta_ji - (b_ij + q b_ji)."""
    rows = []
    for i in range(Q.n):
        row = []
        for j in range(Q.n):
            a = ONE + QVAR if i == j else ZERO
            row.append(a - Q.b[i][j] - QVAR * Q.b[j][i])
        rows.append(tuple(row))
    return tuple(rows)


def cartan_at_one(Q: QuiverData) -> list[list[int]]:
    """Symmetrized classical Cartan matrix 2*delta_ij - b_ij - b_ji."""
    return [
        [(2 if i == j else 0) - Q.b[i][j] - Q.b[j][i] for j in range(Q.n)]
        for i in range(Q.n)
    ]


COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    positive_roots: tuple[tuple[int, ...], ...]
    cartan1: tuple[tuple[int, ...], ...]
    coxeter_h: int | None

    @property
    def rank(self) -> int:
        return len(self.cartan1)

    def simple_reflection(self, i: int) -> list[list[int]]:
        """Matrix of r_i on Z^n (columns are images of the simple roots)."""
        n = self.rank
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for c in range(n):
            m[i - 1][c] -= self.cartan1[c][i - 1]
        return m

    def reflect(self, i: int, x: tuple[int, ...]) -> tuple[int, ...]:
        pair = sum(x[j] * self.cartan1[j][i - 1] for j in range(self.rank))
        out = list(x)
        out[i - 1] -= pair
        return tuple(out)


def positive_roots(Q: QuiverData) -> RootSystem:
    """Positive roots by closure of the simple roots under simple reflections."""
    tag = dynkin_type(Q)
    if tag is None:
        raise UnsupportedTypeError("positive roots need an ADE Dynkin quiver (root set is infinite otherwise)")
    A = tuple(tuple(r) for r in cartan_at_one(Q))
    n = Q.n
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rs = RootSystem(tag, (), A, None)
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(1, n + 1):
                y = rs.reflect(i, x)
                if all(c >= 0 for c in y) and any(y) and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    roots = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r))))
    h = COXETER[tag[0]](int(tag[1:]))
    if 2 * len(roots) != n * h:
        raise AssertionError(f"{tag}: found {len(roots)} positive roots, expected {n * h // 2}")
    return RootSystem(tag, roots, A, h)


def coxeter_number(rs: RootSystem) -> int:
    if rs.coxeter_h is None:
        raise UnsupportedTypeError("Coxeter number is only defined here for ADE types")
    return rs.coxeter_h


def relabel(Q: QuiverData, perm: dict[int, int]) -> QuiverData:
    return build_quiver(Q.n, [(perm[i], perm[j]) for i, j in Q.arrows], Q.name)
