"""Induced q-stability conditions on D_X(Q) from a heart charge and a parameter s.

The charge on the X-baric heart D_inf(Q) = D^b(kQ) is extended R-linearly,
Z(q^l x) = exp(i pi s l) Z(x), and the slicing is P(phi + Re s) = P(phi)[X].
Whether this is a genuine q-stability condition is decided by comparing Re(s)
with the Hom gaps of the heart stability condition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .qlattice import KClass, QLattice
from .repalg import ThinModule, indecomposables
from .ring import LaurentInt, specialize
from .stability import HeartCharge, gldim, hn_module, hom_gaps, semistable_table


def re_part(s):
    """Re(s), kept exact for int/Fraction input."""
    if isinstance(s, complex):
        return s.real
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    return s


@dataclass(frozen=True)
class QCentralCharge:
    sigma: HeartCharge
    s: object

    @property
    def heart_values(self) -> list[complex]:
        return self.sigma.simple_charges()

    def zq(self, x: KClass) -> dict[int, complex]:
        """Z_q(x) as a Laurent polynomial with complex coefficients."""
        out: dict[int, complex] = {}
        for coord, zi in zip(x.coords, self.heart_values):
            for k, c in coord.terms():
                out[k] = out.get(k, 0j) + c * zi
        return {k: v for k, v in sorted(out.items()) if v != 0}

    def __call__(self, x: KClass) -> complex:
        """Z = q_s o Z_q: evaluate the R-linear charge at q = exp(i pi s)."""
        return sum(specialize(coord, self.s) * zi for coord, zi in zip(x.coords, self.heart_values))

    def q_value(self) -> complex:
        return specialize(LaurentInt.monomial(1), self.s)


def induce_q_charge(sigma: HeartCharge, s) -> QCentralCharge:
    return QCentralCharge(sigma, s)


@dataclass(frozen=True)
class Violation:
    source: ThinModule
    target: ThinModule
    degree: int
    gap: object

    def to_json(self) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "degree": self.degree,
            "gap": float(self.gap),
            "gap_exact": str(self.gap) if isinstance(self.gap, Fraction) else None,
        }


def check_additive(sigma: HeartCharge, s) -> tuple[bool, list[Violation]]:
    """Hom(P(phi1), P(phi2)) must vanish whenever phi2 - phi1 >= Re(s) - 1.

    Equality counts as a violation.
    """
    bound = re_part(s) - 1
    table = semistable_table(sigma)
    bad = [Violation(A, B, k, gap) for gap, A, B, k in hom_gaps(table) if gap >= bound]
    bad.sort(key=lambda v: v.gap, reverse=True)
    return not bad, bad


@dataclass(frozen=True)
class InducingVerdict:
    gldim_value: object
    open: bool
    additive_ok: bool
    closed_ok: bool
    witnesses: tuple[Violation, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "gldim": float(self.gldim_value),
            "gldim_exact": str(self.gldim_value) if isinstance(self.gldim_value, Fraction) else None,
            "open": self.open,
            "additive": self.additive_ok,
            "closed": self.closed_ok,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def classify(sigma: HeartCharge, s) -> InducingVerdict:
    """open: gldim + 1 < Re(s); closed: gldim <= Re(s) - 1; additive: check_additive."""
    g = gldim(sigma).value
    re = re_part(s)
    additive, witnesses = check_additive(sigma, s)
    return InducingVerdict(g, g + 1 < re, additive, g <= re - 1, tuple(witnesses))


class NotOpenError(ValueError):
    def __init__(self, verdict: InducingVerdict):
        self.verdict = verdict
        super().__init__(
            f"the induced data is not a q-stability condition: gldim {float(verdict.gldim_value)} + 1 >= Re(s)"
        )


@dataclass(frozen=True)
class DXObject:
    """Formal direct sum of shifted heart modules M[m + lX]."""

    summands: tuple[tuple[ThinModule, int, int], ...]

    @classmethod
    def of(cls, *items) -> DXObject:
        out = []
        for it in items:
            if isinstance(it, ThinModule):
                out.append((it, 0, 0))
            else:
                out.append(tuple(it))
        return cls(tuple(out))

    def k_class(self, n: int) -> KClass:
        total = KClass.zero(n)
        for M, m, l in self.summands:
            total = total + KClass.from_dim(M.dim).scale(LaurentInt.monomial(l, -1 if m % 2 else 1))
        return total


@dataclass(frozen=True)
class DXFactor:
    k_class: KClass
    phase: object
    modules: tuple[tuple[ThinModule, int, int], ...]

    def to_json(self) -> dict:
        return {
            "class": self.k_class.to_json(),
            "phase": float(self.phase),
            "factors": [f"{M.name}[{m}{l:+d}X]" for M, m, l in self.modules],
        }


def hn_dx(E: DXObject, sigma: HeartCharge, s) -> list[DXFactor]:
    """HN factors in D_X: a summand M[m + lX] contributes the heart factors of M
    at phase phi + m + l Re(s)."""
    verdict = classify(sigma, s)
    if not verdict.open:
        raise NotOpenError(verdict)
    re = re_part(s)
    pieces = []
    for M, m, l in E.summands:
        for f in hn_module(M, sigma):
            pieces.append((f.phase + m + l * re, f, m, l))
    pieces.sort(key=lambda t: t[0], reverse=True)
    out: list[DXFactor] = []
    for ph, f, m, l in pieces:
        cls = KClass.from_dim(f.dim).scale(LaurentInt.monomial(l, -1 if m % 2 else 1))
        mods = tuple((mod, m, l) for mod in f.modules)
        if out and abs(out[-1].phase - ph) <= sigma.eps:
            prev = out[-1]
            out[-1] = DXFactor(prev.k_class + cls, prev.phase, prev.modules + mods)
        else:
            out.append(DXFactor(cls, ph, mods))
    return out


def support_constant(sigma: HeartCharge, s=None) -> float:
    """L = min |Z(a)| / ||a|| over semistable classes of the heart, Euclidean norm on Z^n.

    The lattice is K(D_inf) = Z^n, on which Z does not depend on s.
    """
    table = semistable_table(sigma)
    return min(abs(sigma.z(e.module.dim)) / math.sqrt(sum(d * d for d in e.module.dim)) for e in table.entries)


@dataclass(frozen=True)
class XHomBound:
    n0: int
    verified: bool
    justification: str


def x_hom_bound(Q) -> XHomBound:
    """N0 = 1: Hom(A1[k1 X], A2[k2 X]) vanishes unless k1 - k2 is 0 or 1.

    Checked on K-theory: chi(M, N) of every pair of indecomposables has
    nonzero q-coefficients only in degrees 0 and 1.
    """
    lat = QLattice(Q)
    ok = True
    for M in indecomposables(Q):
        for N in indecomposables(Q):
            chi = lat.euler_form(KClass.from_dim(M.dim), KClass.from_dim(N.dim))
            if any(k not in (0, 1) for k in chi.exponents()):
                ok = False
    return XHomBound(
        1, ok, "chi(L(E), L(F)) = chi0(E, F) + q chi0(F, E): only X-degrees 0 and 1 occur"
    )


def q_support(sigma: HeartCharge, s) -> dict:
    """Data of the q-support property for an induced condition."""
    verdict = classify(sigma, s)
    L = support_constant(sigma, s)
    bound = x_hom_bound(sigma.quiver)
    return {
        "L": L,
        "N0": bound.n0,
        "holds": bool(verdict.open and L > 0 and bound.verified),
    }


def s_grid(start, stop, step) -> list:
    """Inclusive grid of exact rationals when the inputs are exact."""
    start, stop, step = (Fraction(str(x)) if isinstance(x, float) else Fraction(x) for x in (start, stop, step))
    out = []
    k = 0
    while start + k * step <= stop:
        out.append(start + k * step)
        k += 1
    return out


def open_threshold_scan(sigma: HeartCharge, grid: Sequence) -> list[tuple[object, bool, bool]]:
    g = gldim(sigma).value
    return [(s, g + 1 < re_part(s), g <= re_part(s) - 1) for s in grid]
