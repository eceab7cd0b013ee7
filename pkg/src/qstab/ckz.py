"""Monodromy of the Coxeter-KZ connection for ADE reflection representations.

Coordinates on h are p^i = alpha_i(p), so a root alpha = sum c_i alpha_i is
the linear form p -> c . p.  The reflection in alpha acts on h by
p -> p - alpha(p) alpha^vee with alpha^vee = A c in the basis e_i dual to the
simple roots; the flat metric is G = A^-1.

Flat sections satisfy Y' = nu * sum_alpha (rho(r_alpha) - 1) (alpha(p')/alpha(p)) Y.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .qlattice import QLattice
from .quiver import QuiverData, coxeter_number, positive_roots, preset

DEFAULT_TOL = 1e-10
R_MIN = 1e-3
MAX_STEPS = 200_000


class HyperplaneProximityError(ValueError):
    def __init__(self, root, distance):
        self.root = tuple(int(c) for c in root)
        self.distance = distance
        super().__init__(f"path comes within {distance:.3g} of the hyperplane of root {self.root}")


class TransportError(RuntimeError):
    pass


@dataclass
class ReflectionRep:
    """Reflections of an ADE root system acting on h in the e-basis."""

    type_tag: str
    cartan: np.ndarray
    roots: np.ndarray
    reflections: np.ndarray
    coxeter_h: int

    @classmethod
    def from_quiver(cls, Q: QuiverData) -> ReflectionRep:
        rs = positive_roots(Q)
        A = np.array(rs.cartan1, dtype=float)
        C = np.array(rs.positive_roots, dtype=float)
        n = Q.n
        refl = np.array([np.eye(n) - np.outer(A @ c, c) for c in C])
        return cls(rs.type_tag, A, C, refl, coxeter_number(rs))

    @classmethod
    def of_type(cls, name: str) -> ReflectionRep:
        return cls.from_quiver(preset(name))

    @property
    def n(self) -> int:
        return self.cartan.shape[0]

    @property
    def metric(self) -> np.ndarray:
        return np.linalg.inv(self.cartan)

    def simple_index(self, i: int) -> int:
        target = np.zeros(self.n)
        target[i - 1] = 1
        return int(np.flatnonzero(np.all(self.roots == target, axis=1))[0])

    def simple_reflection(self, i: int) -> np.ndarray:
        return self.reflections[self.simple_index(i)]

    def coroot(self, i: int) -> np.ndarray:
        return self.cartan[:, i - 1].astype(complex)

    def root_values(self, p: np.ndarray) -> np.ndarray:
        return self.roots @ p

    def residue_sum(self) -> np.ndarray:
        """K = sum over positive roots of (rho(r_alpha) - 1)."""
        return (self.reflections - np.eye(self.n)).sum(axis=0)

    def involution_residual(self) -> float:
        return max(float(np.abs(r @ r - np.eye(self.n)).max()) for r in self.reflections)

    def metric_residual(self) -> float:
        G = self.metric
        return max(float(np.abs(r.T @ G @ r - G).max()) for r in self.reflections)

    def closure_ok(self) -> bool:
        """Every root reflection is a conjugate of a simple one by simple reflections.

        Walks the roots from the simple ones: if beta' = r_i(beta) then
        rho(r_beta') must equal rho(r_i) rho(r_beta) rho(r_i).
        """
        index = {tuple(np.rint(c).astype(int)): k for k, c in enumerate(self.roots)}
        A = np.rint(self.cartan).astype(int)
        built = {self.simple_index(i): self.simple_reflection(i) for i in range(1, self.n + 1)}
        frontier = list(built)
        while frontier:
            nxt = []
            for k in frontier:
                beta = np.rint(self.roots[k]).astype(int)
                for i in range(self.n):
                    img = beta.copy()
                    img[i] -= int(A[i] @ beta)
                    j = index.get(tuple(img))
                    if j is None or j in built:
                        continue
                    s = self.reflections[self.simple_index(i + 1)]
                    built[j] = s @ built[k] @ s
                    nxt.append(j)
            frontier = nxt
        return len(built) == len(self.roots) and all(
            np.abs(built[k] - self.reflections[k]).max() < 1e-9 for k in built
        )


@dataclass
class PathSpec:
    """A path t -> p(t), t in [0, 1], in the complexified Cartan subalgebra."""

    point: Callable[[float], np.ndarray]
    velocity: Callable[[float], np.ndarray]
    name: str = "path"
    samples: int = 513

    def min_root_distance(self, rep: ReflectionRep) -> tuple[float, np.ndarray]:
        ts = np.linspace(0.0, 1.0, self.samples)
        vals = np.abs(np.array([rep.root_values(self.point(t)) for t in ts]))
        idx = np.unravel_index(np.argmin(vals), vals.shape)
        return float(vals[idx]), rep.roots[idx[1]]

    def check(self, rep: ReflectionRep, r_min: float = R_MIN) -> None:
        d, root = self.min_root_distance(rep)
        if d < r_min:
            raise HyperplaneProximityError(root, d)


def default_basepoint(n: int, eps: float = 0.01) -> np.ndarray:
    """p^j = 1 + i eps j: real parts in the dominant chamber, generic imaginary parts."""
    return np.array([1 + 1j * eps * j for j in range(1, n + 1)], dtype=complex)


def radial_path(p0: np.ndarray, lam: float) -> PathSpec:
    p0 = np.asarray(p0, dtype=complex)
    return PathSpec(lambda t: (1 + (lam - 1) * t) * p0, lambda t: (lam - 1) * p0, f"radial(1->{lam})")


def half_turn_path(rep: ReflectionRep, i: int, p0: np.ndarray, orientation: int = -1) -> PathSpec:
    """From p0 to r_i(p0): alpha_i(p) = a exp(orientation * i pi t), transverse part fixed."""
    p0 = np.asarray(p0, dtype=complex)
    a = p0[i - 1]
    cor = rep.coroot(i)
    w = orientation * 1j * math.pi

    def point(t):
        return p0 - 0.5 * a * (1 - cmath.exp(w * t)) * cor

    def velocity(t):
        return 0.5 * a * w * cmath.exp(w * t) * cor

    return PathSpec(point, velocity, f"half-turn({i},{orientation:+d})")


def circle_path(center: np.ndarray, radius: float, u: np.ndarray, v: np.ndarray) -> PathSpec:
    """Closed loop center + radius (cos(2 pi t) u + sin(2 pi t) v)."""
    center = np.asarray(center, dtype=complex)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)

    def point(t):
        return center + radius * (math.cos(2 * math.pi * t) * u + math.sin(2 * math.pi * t) * v)

    def velocity(t):
        return 2 * math.pi * radius * (-math.sin(2 * math.pi * t) * u + math.cos(2 * math.pi * t) * v)

    return PathSpec(point, velocity, "circle")


@dataclass
class Transport:
    matrix: np.ndarray
    nfev: int
    steps: int


def ckz_transport(
    path: PathSpec,
    nu: complex,
    rep: ReflectionRep,
    tol: float = DEFAULT_TOL,
    r_min: float = R_MIN,
    max_steps: int = MAX_STEPS,
) -> Transport:
    """Solution operator Y(1) of the CKZ transport equation with Y(0) = 1 (DOP853)."""
    path.check(rep, r_min)
    n = rep.n
    K = rep.reflections - np.eye(n)
    C = rep.roots.astype(complex)
    nu = complex(nu)
    if nu == 0:
        return Transport(np.eye(n, dtype=complex), 0, 0)

    def rhs(t, y):
        p = path.point(t)
        w = (C @ path.velocity(t)) / (C @ p)
        omega = np.tensordot(w, K, axes=1)
        return (nu * omega @ y.reshape(n, n)).ravel()

    sol = solve_ivp(
        rhs,
        (0.0, 1.0),
        np.eye(n, dtype=complex).ravel(),
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
    )
    steps = len(sol.t) - 1
    if not sol.success or steps > max_steps:
        raise TransportError(f"integration along {path.name} failed to meet tolerance {tol}: {sol.message}")
    return Transport(sol.y[:, -1].reshape(n, n), sol.nfev, steps)


def hecke_parameter(nu: complex) -> complex:
    return cmath.exp(2j * math.pi * complex(nu))


def braid_generator_monodromy(
    i: int,
    nu: complex,
    rep: ReflectionRep,
    tol: float = DEFAULT_TOL,
    p0: np.ndarray | None = None,
    orientation: int = -1,
) -> tuple[np.ndarray, Transport]:
    """M_i = rho(r_i) T(gamma_i), gamma_i the half-turn from p0 to r_i(p0)."""
    p0 = default_basepoint(rep.n) if p0 is None else p0
    tr = ckz_transport(half_turn_path(rep, i, p0, orientation), nu, rep, tol)
    return rep.simple_reflection(i) @ tr.matrix, tr


def hecke_residual(M: np.ndarray, nu: complex, inverse_q: bool = False) -> float:
    """|| (M + q)(M - 1) ||_2 with q = exp(2 pi i nu) (or its inverse)."""
    q = hecke_parameter(nu)
    if inverse_q:
        q = 1 / q
    I = np.eye(M.shape[0])
    return float(np.linalg.norm((M + q * I) @ (M - I), 2))


def braid_residual(Mi: np.ndarray, Mj: np.ndarray, commuting: bool) -> float:
    if commuting:
        return float(np.linalg.norm(Mi @ Mj - Mj @ Mi, 2))
    return float(np.linalg.norm(Mi @ Mj @ Mi - Mj @ Mi @ Mj, 2))


@dataclass
class MonodromyReport:
    type_tag: str
    nu: complex
    matrices: list[np.ndarray]
    hecke_residuals: list[float]
    hecke_residuals_inverse_q: list[float]
    braid_residuals: list[dict]
    ode_tolerance: float
    step_counts: list[int]
    orientation: int
    convention: str = field(default="")

    def to_json(self) -> dict:
        return {
            "type": self.type_tag,
            "nu": {"re": self.nu.real, "im": self.nu.imag},
            "q": {"re": hecke_parameter(self.nu).real, "im": hecke_parameter(self.nu).imag},
            "orientation": self.orientation,
            "convention": self.convention,
            "ode_tolerance": self.ode_tolerance,
            "step_counts": self.step_counts,
            "hecke_residuals": self.hecke_residuals,
            "hecke_residuals_inverse_q": self.hecke_residuals_inverse_q,
            "braid_residuals": self.braid_residuals,
            "matrices": [
                [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in M] for M in self.matrices
            ],
        }


def monodromy_report(
    rep: ReflectionRep, nu: complex, tol: float = DEFAULT_TOL, orientation: int = -1
) -> MonodromyReport:
    nu = complex(nu)
    mats, steps = [], []
    for i in range(1, rep.n + 1):
        M, tr = braid_generator_monodromy(i, nu, rep, tol, orientation=orientation)
        mats.append(M)
        steps.append(tr.steps)
    hecke = [hecke_residual(M, nu) for M in mats]
    hecke_inv = [hecke_residual(M, nu, inverse_q=True) for M in mats]
    braids = []
    for i in range(rep.n):
        for j in range(i + 1, rep.n):
            a = round(rep.cartan[i, j])
            if a == 0:
                braids.append({"pair": [i + 1, j + 1], "relation": "commute", "residual": braid_residual(mats[i], mats[j], True)})
            elif a == -1:
                braids.append({"pair": [i + 1, j + 1], "relation": "braid", "residual": braid_residual(mats[i], mats[j], False)})
    matched = "q = exp(2 pi i nu)" if max(hecke) <= max(hecke_inv) else "q = exp(-2 pi i nu)"
    return MonodromyReport(rep.type_tag, nu, mats, hecke, hecke_inv, braids, tol, steps, orientation, matched)


def radial_closed_form(rep: ReflectionRep, nu: complex, lam: float) -> np.ndarray:
    return expm(complex(nu) * math.log(lam) * rep.residue_sum())


def frobenius_tensors(p: np.ndarray, rep: ReflectionRep) -> tuple[np.ndarray, np.ndarray]:
    """(C, Gamma) with C[i, j, k] = C_ij^k and Gamma[i, j, k] the CKZ coefficients without nu.

    C_ij^k = sum_l G^{kl} sum_alpha alpha(e_i) alpha(e_j) alpha(e_l) / alpha(p), G^{kl} = A_kl.
    Gamma_ij^k = sum_alpha [e_k-coefficient of e_j - r_alpha(e_j)] alpha(e_i) / alpha(p).
    """
    p = np.asarray(p, dtype=complex)
    vals = rep.root_values(p)
    if np.min(np.abs(vals)) < R_MIN:
        k = int(np.argmin(np.abs(vals)))
        raise HyperplaneProximityError(rep.roots[k], float(abs(vals[k])))
    Ginv = rep.cartan
    C = rep.roots
    cubic = np.einsum("a,ai,aj,al->ijl", 1 / vals, C, C, C)
    Cijk = np.einsum("ijl,kl->ijk", cubic, Ginv)
    n = rep.n
    diff = np.eye(n)[None, :, :] - rep.reflections  # diff[a, k, j] = coeff of e_k in e_j - r_a e_j
    Gamma = np.einsum("a,ai,akj->ijk", 1 / vals, C, diff)
    return Cijk, Gamma


def frobenius_mult_check(p: np.ndarray, rep: ReflectionRep) -> float:
    Cijk, Gamma = frobenius_tensors(p, rep)
    return float(np.abs(Cijk - Gamma).max())


def euler_unit_residual(p: np.ndarray, rep: ReflectionRep) -> float:
    """max |(1/h) sum_i p^i C_ij^k - delta_jk|: the Euler field is the unit."""
    Cijk, _ = frobenius_tensors(p, rep)
    unit = np.einsum("i,ijk->jk", np.asarray(p, dtype=complex), Cijk) / rep.coxeter_h
    return float(np.abs(unit - np.eye(rep.n)).max())


def nu_from_s(s: complex) -> complex:
    """nu = (s - 2)/2, so that exp(2 pi i nu) = exp(i pi s)."""
    return (s - 2) / 2


def _word_product(mats: Sequence[np.ndarray], word: Sequence[int], n: int) -> np.ndarray:
    out = np.eye(n, dtype=complex)
    for g in word:
        m = mats[abs(g) - 1]
        out = out @ (m if g > 0 else np.linalg.inv(m))
    return out


def compare_algebraic(
    Q: QuiverData, nu: complex, words: Sequence[Sequence[int]], tol: float = DEFAULT_TOL, orientation: int = -1
) -> list[dict]:
    """Traces of monodromy words next to traces of q-reflection words at q = exp(2 pi i nu).

    Generator i maps to M_i on the monodromy side and to r_i^q on the
    algebraic side (both are images of -T_i).  Exploratory only.
    """
    rep = ReflectionRep.from_quiver(Q)
    nu = complex(nu)
    mats = [braid_generator_monodromy(i, nu, rep, tol, orientation=orientation)[0] for i in range(1, rep.n + 1)]
    lat = QLattice(Q)
    q = hecke_parameter(nu)
    alg = [lat.reflection_matrix(i).at_q(q) for i in range(1, rep.n + 1)]
    rows = []
    for w in words:
        tm = complex(np.trace(_word_product(mats, w, rep.n)))
        ta = complex(np.trace(_word_product(alg, w, rep.n)))
        rows.append({"word": list(w), "monodromy_trace": tm, "algebraic_trace": ta, "difference": abs(tm - ta)})
    return rows


def sweep(rep: ReflectionRep, nus: Sequence[float], tol: float = DEFAULT_TOL) -> list[dict]:
    rows = []
    for nu in nus:
        r = monodromy_report(rep, nu, tol)
        rows.append(
            {
                "nu": float(nu),
                "max_hecke_residual": max(r.hecke_residuals),
                "max_hecke_residual_inverse_q": max(r.hecke_residuals_inverse_q),
                "max_braid_residual": max((b["residual"] for b in r.braid_residuals), default=0.0),
            }
        )
    return rows
