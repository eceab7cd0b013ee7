"""The Calabi-Yau-X A2 example.

K-theory shadows of the auto-equivalences tau = Phi_1 Phi_2 [X-2] and
Upsilon = Phi_1 Phi_2 Phi_1 [2X-3], the Gepner charge, and the fundamental
domain R_s in the coordinate z with exp(i pi z) = Z(S1)/Z(S2).
"""
from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qlattice import QLattice, RLinearMap
from .quiver import preset
from .ring import LaurentInt

BOUNDARY_TOL = 1e-9


def a2_lattice() -> QLattice:
    return QLattice(preset("A2"))


def shift_map(m: int, l: int, n: int = 2) -> RLinearMap:
    """Class action of [m + lX]."""
    return RLinearMap.scalar(n, LaurentInt.monomial(l, -1 if m % 2 else 1))


def tau_x_matrix() -> RLinearMap:
    lat = a2_lattice()
    return lat.twist_matrix(1) @ lat.twist_matrix(2) @ shift_map(-2, 1)


def upsilon_x_matrix() -> RLinearMap:
    lat = a2_lattice()
    return lat.twist_matrix(1) @ lat.twist_matrix(2) @ lat.twist_matrix(1) @ shift_map(-3, 2)


def center_generator() -> RLinearMap:
    lat = a2_lattice()
    return (lat.twist_matrix(1) @ lat.twist_matrix(2)) ** 3


def center_commutes() -> bool:
    lat = a2_lattice()
    c = center_generator()
    return all(c @ lat.twist_matrix(i) == lat.twist_matrix(i) @ c for i in (1, 2))


@dataclass(frozen=True)
class GepnerCharge:
    z_values: tuple[complex, complex]
    residual: float
    s: object

    @property
    def coordinate(self) -> A2Coordinate:
        z1, z2 = self.z_values
        return z_coordinate(z1, z2, cmath.phase(z1 / z2) / math.pi)

    def to_json(self) -> dict:
        z = self.coordinate.z
        return {
            "Z": [{"re": v.real, "im": v.imag} for v in self.z_values],
            "residual": self.residual,
            "z": {"re": z.real, "im": z.imag},
        }


def gepner_charge(s=3) -> GepnerCharge:
    """Row vector Z with Z o [tau] = exp(-2 pi i / 3) Z, normalised Z(S1) = 1.

    [tau] has no q-dependence, so the solution is the same for every s.
    Z is the left eigenvector of the specialised matrix for that eigenvalue.
    """
    T = tau_x_matrix().specialize(s)
    lam = cmath.exp(-2j * math.pi / 3)
    w, vl = np.linalg.eig(T.T)
    idx = int(np.argmin(np.abs(w - lam)))
    if abs(w[idx] - lam) > 1e-9:
        raise ArithmeticError(f"tau has no eigenvalue exp(-2 pi i/3); spectrum {w}")
    Z = vl[:, idx] / vl[0, idx]
    Z[0] = 1.0
    residual = float(np.linalg.norm(Z @ T - lam * Z))
    return GepnerCharge((complex(Z[0]), complex(Z[1])), residual, s)


@dataclass(frozen=True)
class A2Coordinate:
    z: complex

    @property
    def x(self) -> float:
        return self.z.real

    @property
    def y(self) -> float:
        return self.z.imag


def z_coordinate(z1: complex, z2: complex, phase_diff: float) -> A2Coordinate:
    """z with Re z = phi(S1) - phi(S2) (branch data from the caller) and
    Im z = -ln|Z1/Z2| / pi, so that exp(i pi z) = Z1/Z2 on the right branch."""
    if z1 == 0 or z2 == 0:
        raise ValueError("central charges of simples must be nonzero")
    return A2Coordinate(complex(float(phase_diff), -math.log(abs(z1 / z2)) / math.pi))


class Membership(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"
    UNSUPPORTED = "unsupported-range"


def boundary_height(x: float) -> float:
    """|y| on the curves l_+ and l_-: -ln(-2 cos(pi x)) / pi for x in (1/2, 2/3]."""
    return -math.log(-2 * math.cos(math.pi * x)) / math.pi


def left_edge(s) -> float:
    return (2 - float(s.real if isinstance(s, complex) else s)) / 2


def in_fundamental_domain(z: A2Coordinate | complex, s, tol: float = BOUNDARY_TOL) -> Membership:
    if isinstance(z, A2Coordinate):
        z = z.z
    re_s = float(s.real if isinstance(s, complex) else s)
    if re_s < 2:
        return Membership.UNSUPPORTED
    x, y = z.real, z.imag
    x0 = left_edge(s)
    if abs(x - x0) <= tol:
        return Membership.BOUNDARY
    if x < x0:
        return Membership.EXTERIOR
    if x <= 0.5 + tol:
        return Membership.INTERIOR
    if x > 2 / 3 + tol:
        return Membership.EXTERIOR
    if abs(x - 2 / 3) <= tol and abs(y) <= tol:
        return Membership.BOUNDARY
    if x >= 2 / 3:
        return Membership.BOUNDARY if abs(y) <= tol else Membership.EXTERIOR
    h = boundary_height(x)
    if abs(abs(y) - h) <= tol:
        return Membership.BOUNDARY
    return Membership.INTERIOR if abs(y) < h else Membership.EXTERIOR


def orbifold_points(s) -> dict[str, complex]:
    return {"order2": complex((2 - complex(s)) / 2), "order3": complex(2 / 3)}


def domain_sample(s, grid: int = 400, x_range=None, y_range=(-2.0, 2.0)) -> list[dict]:
    x0 = left_edge(s)
    xr = x_range or (x0 - 0.25, 1.0)
    rows = []
    xs = np.linspace(xr[0], xr[1], grid)
    ys = np.linspace(y_range[0], y_range[1], grid)
    if y_range[0] < 0 < y_range[1] and not np.any(ys == 0.0):
        ys = np.sort(np.append(ys, 0.0))
    for x in xs:
        for y in ys:
            rows.append({"x": float(x), "y": float(y), "membership": in_fundamental_domain(complex(x, y), s).value})
    return rows


def domain_sample_csv(s, grid: int = 400) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["x", "y", "membership"], lineterminator="\n")
    w.writeheader()
    for row in domain_sample(s, grid):
        w.writerow({"x": format(row["x"], ".17g"), "y": format(row["y"], ".17g"), "membership": row["membership"]})
    return buf.getvalue()
