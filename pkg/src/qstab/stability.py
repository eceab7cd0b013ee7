"""Stability conditions on D^b(kQ) for type-A quivers, built from a heart charge.

A heart charge assigns each simple S_i a mass m_i > 0 and a phase in (0, 1];
Z(S_i) = m_i exp(i pi phi_i).  The semistable objects are found by scanning
the (finite) submodule lattices of thin modules.

Phases are exact ``Fraction`` objects whenever the charge is rational and
the argument of Z is a rational multiple of pi (recognised at 50 digits);
otherwise they are floats.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Real
from typing import Sequence

import mpmath

from .quiver import QuiverData, path_order
from .repalg import (
    ThinModule,
    _require_type_a,
    chi0,
    hom_dim,
    indecomposables,
    quotient,
    submodule_supports,
)

Phase = Real
FLOAT_EPS = 1e-12
_RECOGNISE_DPS = 50


def _to_exact(x) -> Fraction | float:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class HeartCharge:
    """Masses and phases of the simples of the standard heart mod kQ."""

    quiver: QuiverData
    masses: tuple
    phases: tuple

    def __post_init__(self) -> None:
        if len(self.masses) != self.quiver.n or len(self.phases) != self.quiver.n:
            raise ValueError("need one mass and one phase per vertex")
        object.__setattr__(self, "masses", tuple(_to_exact(m) for m in self.masses))
        object.__setattr__(self, "phases", tuple(_to_exact(p) for p in self.phases))
        for m in self.masses:
            if not m > 0:
                raise ValueError(f"masses must be positive, got {m}")
        for p in self.phases:
            if not 0 < p <= 1:
                raise ValueError(f"heart phases must lie in (0, 1], got {p}")

    @classmethod
    def from_phases(cls, quiver: QuiverData, phases: Sequence, masses: Sequence | None = None) -> HeartCharge:
        masses = masses if masses is not None else [1] * quiver.n
        return cls(quiver, tuple(masses), tuple(phases))

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.masses + self.phases)

    @property
    def eps(self):
        return 0 if self.exact else FLOAT_EPS

    def simple_charges(self) -> list[complex]:
        return [float(m) * cmath.exp(1j * math.pi * float(p)) for m, p in zip(self.masses, self.phases)]

    def z(self, dim: Sequence[int]) -> complex:
        return sum(d * zc for d, zc in zip(dim, self.simple_charges()))

    def phase(self, dim: Sequence[int]) -> Phase:
        """Phase in (0, 1] of a nonzero class in the positive cone."""
        return _phase(self, tuple(dim))

    def mass(self, dim: Sequence[int]) -> float:
        return abs(self.z(dim))

    def with_phases(self, phases: Sequence) -> HeartCharge:
        return HeartCharge(self.quiver, self.masses, tuple(phases))

    def to_json(self) -> list[str]:
        return [f"{m}@{p}" for m, p in zip(self.masses, self.phases)]


@lru_cache(maxsize=65536)
def _phase(sigma: HeartCharge, dim: tuple[int, ...]) -> Phase:
    if not any(dim):
        raise ValueError("the zero class has no phase")
    if sigma.exact:
        with mpmath.workdps(_RECOGNISE_DPS):
            z = mpmath.mpc(0)
            for d, m, p in zip(dim, sigma.masses, sigma.phases):
                if d:
                    mm = mpmath.mpf(m.numerator) / m.denominator
                    pp = mpmath.mpf(p.numerator) / p.denominator
                    z += d * mm * mpmath.expjpi(pp)
            ph = mpmath.arg(z) / mpmath.pi
            if ph < -0.5:
                ph += 2
            guess = Fraction(float(ph)).limit_denominator(10**6)
            if abs(mpmath.mpf(guess.numerator) / guess.denominator - ph) < mpmath.mpf(10) ** (-40):
                return guess
            return float(ph)
    z = sigma.z(dim)
    ph = math.atan2(z.imag, z.real) / math.pi
    if ph < -0.5:
        ph += 2
    return ph


@dataclass(frozen=True)
class HNFactor:
    dim: tuple[int, ...]
    phase: Phase
    modules: tuple[ThinModule, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"class": list(self.dim), "phase": float(self.phase), "factors": [m.name for m in self.modules]}


def max_destabilizing(M: ThinModule, sigma: HeartCharge) -> tuple[ThinModule, Phase]:
    """The maximal destabilizing submodule: largest phase, then largest dimension."""
    best, best_phase = None, None
    eps = sigma.eps
    for U in submodule_supports(M):
        if not U:
            continue
        ph = sigma.phase(tuple(int(v in U) for v in M.quiver.vertices))
        if best is None or ph > best_phase + eps or (abs(ph - best_phase) <= eps and len(U) > len(best)):
            best, best_phase = U, ph
    return ThinModule(M.quiver, best), best_phase


def hn_module(M: ThinModule, sigma: HeartCharge) -> list[HNFactor]:
    factors = []
    cur = M
    while not cur.is_zero():
        sub, ph = max_destabilizing(cur, sigma)
        factors.append(HNFactor(sub.dim, ph, (sub,)))
        cur = quotient(cur, sub.support)
    return factors


@dataclass(frozen=True)
class DObject:
    """A formal direct sum of shifted thin modules M[m]."""

    summands: tuple[tuple[ThinModule, int], ...]

    @classmethod
    def of(cls, *items) -> DObject:
        out = []
        for it in items:
            out.append(it if isinstance(it, tuple) else (it, 0))
        return cls(tuple(out))

    def k_class(self) -> tuple[int, ...]:
        if not self.summands:
            return ()
        n = self.summands[0][0].quiver.n
        total = [0] * n
        for M, m in self.summands:
            sign = -1 if m % 2 else 1
            for i, d in enumerate(M.dim):
                total[i] += sign * d
        return tuple(total)


def merge_factors(factors: list[HNFactor], eps) -> list[HNFactor]:
    """Sort by decreasing phase and add together factors of equal phase."""
    factors = sorted(factors, key=lambda f: f.phase, reverse=True)
    out: list[HNFactor] = []
    for f in factors:
        if out and abs(out[-1].phase - f.phase) <= eps:
            prev = out[-1]
            out[-1] = HNFactor(
                tuple(a + b for a, b in zip(prev.dim, f.dim)), prev.phase, prev.modules + f.modules
            )
        else:
            out.append(f)
    return out


def hn_filtration(E: DObject | ThinModule, sigma: HeartCharge) -> list[HNFactor]:
    """HN factors of E with strictly decreasing phases.

    A summand M[m] contributes the factors of M with phases raised by m and
    classes multiplied by (-1)^m.
    """
    if isinstance(E, ThinModule):
        E = DObject.of(E)
    _require_type_a(sigma.quiver)
    pieces = []
    for M, m in E.summands:
        sign = -1 if m % 2 else 1
        for f in hn_module(M, sigma):
            pieces.append(HNFactor(tuple(sign * d for d in f.dim), f.phase + m, f.modules))
    return merge_factors(pieces, sigma.eps)


def is_semistable(M: ThinModule, sigma: HeartCharge) -> bool:
    """Brute-force certificate: no nonzero submodule has strictly larger phase."""
    ph = sigma.phase(M.dim)
    for U in submodule_supports(M):
        if U and sigma.phase(tuple(int(v in U) for v in M.quiver.vertices)) > ph + sigma.eps:
            return False
    return True


def is_stable(M: ThinModule, sigma: HeartCharge) -> bool:
    ph = sigma.phase(M.dim)
    for U in submodule_supports(M):
        if U and U != M.support and sigma.phase(tuple(int(v in U) for v in M.quiver.vertices)) >= ph - sigma.eps:
            return False
    return True


@dataclass(frozen=True)
class SemistableEntry:
    module: ThinModule
    phase: Phase
    mass: float
    is_stable: bool

    def to_json(self) -> dict:
        return {
            "module": self.module.name,
            "class": list(self.module.dim),
            "phase": float(self.phase),
            "phase_exact": str(self.phase) if isinstance(self.phase, Fraction) else None,
            "mass": self.mass,
            "stable": self.is_stable,
        }


@dataclass(frozen=True)
class SlicingTable:
    """Semistable indecomposables with their phases; phases may leave (0, 1] after rotation."""

    quiver: QuiverData
    entries: tuple[SemistableEntry, ...]
    eps: float = 0

    def phases(self) -> dict[str, Phase]:
        return {e.module.name: e.phase for e in self.entries}

    def slice(self, phi) -> list[ThinModule]:
        """Indecomposables of P(phi), including shifts of the listed ones."""
        out = []
        for e in self.entries:
            k = phi - e.phase
            if abs(k - round(k)) <= self.eps:
                out.append((e.module, int(round(k))))
        return out


def semistable_table(sigma: HeartCharge) -> SlicingTable:
    _require_type_a(sigma.quiver)
    entries = []
    for M in indecomposables(sigma.quiver):
        if len(hn_module(M, sigma)) == 1:
            entries.append(SemistableEntry(M, sigma.phase(M.dim), sigma.mass(M.dim), is_stable(M, sigma)))
    return SlicingTable(sigma.quiver, tuple(entries), sigma.eps)


@lru_cache(maxsize=None)
def _hom_table(Q: QuiverData) -> dict[tuple[frozenset, frozenset], tuple[int, int]]:
    ind = indecomposables(Q)
    table = {}
    for A, B in itertools.product(ind, repeat=2):
        h = hom_dim(A, B)
        table[(A.support, B.support)] = (h, h - chi0(Q, A.dim, B.dim))
    return table


def hom_degrees(A: ThinModule, B: ThinModule) -> tuple[int, int]:
    """(dim Hom(A, B), dim Ext^1(A, B)) for indecomposables."""
    return _hom_table(A.quiver)[(A.support, B.support)]


@dataclass(frozen=True)
class GldimResult:
    value: Phase
    witness: tuple[ThinModule, ThinModule, int] | None

    def to_json(self) -> dict:
        A, B, k = self.witness if self.witness else (None, None, None)
        return {
            "gldim": float(self.value),
            "gldim_exact": str(self.value) if isinstance(self.value, Fraction) else None,
            "witness_pair": [A.name, B.name, k] if A is not None else None,
        }


def hom_gaps(table: SlicingTable):
    """Yield (gap, A, B, k) for every semistable pair with Hom(A, B[k]) != 0."""
    for ea, eb in itertools.product(table.entries, repeat=2):
        degs = hom_degrees(ea.module, eb.module)
        for k in (0, 1):
            if degs[k]:
                yield eb.phase + k - ea.phase, ea.module, eb.module, k


def table_gldim(table: SlicingTable) -> GldimResult:
    best, witness = None, None
    for gap, A, B, k in hom_gaps(table):
        if best is None or gap > best + table.eps:
            best, witness = gap, (A, B, k)
    return GldimResult(best, witness)


def gldim(sigma: HeartCharge) -> GldimResult:
    """max (phi_B + k - phi_A) over semistable A, B with Hom(A, B[k]) != 0, k in {0, 1}.

    kQ is hereditary, so no other degree carries morphisms between heart
    objects and the supremum over all shifts reduces to this finite scan.
    """
    return table_gldim(semistable_table(sigma))


def act_c(table: SlicingTable, t) -> SlicingTable:
    """t . (Z, P) = (Z exp(-i pi t), P(. + Re t)) applied to a slicing table."""
    if isinstance(t, complex):
        re, im = (t.real, t.imag)
    else:
        re, im = t, 0
    re = _to_exact(re)
    scale = math.exp(math.pi * im)
    entries = tuple(
        SemistableEntry(e.module, e.phase + re, e.mass * scale, e.is_stable) for e in table.entries
    )
    eps = table.eps if isinstance(re, Fraction) else max(table.eps, FLOAT_EPS)
    return SlicingTable(table.quiver, entries, eps)


def heuristic_charge(Q: QuiverData) -> HeartCharge:
    """Unit masses, phases equally spaced in (0, 1] and decreasing along the path."""
    order = path_order(Q)
    n = Q.n
    phases = [0.0] * n
    for k, v in enumerate(order):
        phases[v - 1] = 1.0 - k / n
    return HeartCharge.from_phases(Q, phases)


@dataclass
class SearchResult:
    charge: HeartCharge
    value: float
    evaluations: int
    budget: int
    budget_exhausted: bool

    def to_json(self) -> dict:
        return {
            "phases": [float(p) for p in self.charge.phases],
            "masses": [float(m) for m in self.charge.masses],
            "gldim": self.value,
            "evaluations": self.evaluations,
            "budget": self.budget,
            "budget_exhausted": self.budget_exhausted,
        }


def min_gldim_search(Q: QuiverData, budget: int = 20000, starts: int = 4, min_step: float = 1e-7) -> SearchResult:
    """Minimise gldim over heart phases with unit masses.

    A coarse grid over (0, 1]^n seeds a few pattern searches (coordinate
    moves with step halving); the equally spaced heuristic charge is always
    one of the seeds.
    """
    _require_type_a(Q)
    n = Q.n
    evals = 0

    def f(phases) -> float:
        nonlocal evals
        evals += 1
        return float(gldim(HeartCharge.from_phases(Q, [float(p) for p in phases])).value)

    g = max(2, int((budget / 4) ** (1.0 / n)))
    g = min(g, 24)
    grid_vals = [k / g for k in range(1, g + 1)]
    scored = []
    for pt in itertools.product(grid_vals, repeat=n):
        if evals >= budget // 2:
            break
        scored.append((f(pt), pt))
    scored.sort()
    h = heuristic_charge(Q)
    seeds = [list(pt) for _, pt in scored[:starts]] + [list(map(float, h.phases))]
    best_val, best_pt = min((f(s), s) for s in seeds)

    step0 = 1.0 / g
    for seed in seeds:
        x, fx, step = list(seed), f(seed), step0
        while step >= min_step and evals < budget:
            improved = False
            for i in range(n):
                for d in (step, -step):
                    y = list(x)
                    y[i] = min(1.0, max(y[i] + d, 1e-9))
                    if y[i] == x[i]:
                        continue
                    fy = f(y)
                    if fy < fx - 1e-15:
                        x, fx, improved = y, fy, True
            if not improved:
                step /= 2
        if fx < best_val:
            best_val, best_pt = fx, x
    return SearchResult(HeartCharge.from_phases(Q, best_pt), best_val, evals, budget, evals >= budget)


def parse_charge(Q: QuiverData, text: str) -> HeartCharge:
    """Parse comma-separated "mass@phase" tokens; decimals and a/b stay exact."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if len(tokens) != Q.n:
        raise ValueError(f"expected {Q.n} mass@phase tokens, got {len(tokens)}")
    masses, phases = [], []
    for tok in tokens:
        if "@" not in tok:
            raise ValueError(f"bad charge token {tok!r}; expected mass@phase")
        m, p = tok.split("@", 1)
        masses.append(Fraction(m.strip()))
        phases.append(Fraction(p.strip()))
    return HeartCharge(Q, tuple(masses), tuple(phases))
