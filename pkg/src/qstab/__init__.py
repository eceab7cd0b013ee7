"""qstab: q-stability conditions for Dynkin quivers.

Exact Laurent-polynomial algebra on the q-root lattice, type-A stability data
(HN filtrations, semistables, global dimension), induced q-stability
conditions, the Calabi-Yau-X A2 example and numerical CKZ monodromy.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .ring import LaurentInt, format_laurent, parse_laurent
from .quiver import QuiverData, build_quiver, load_quiver, preset, q_cartan, positive_roots
from .qlattice import KClass, QLattice, RLinearMap
from .stability import HeartCharge, gldim, hn_filtration, semistable_table
from .qinduce import classify, hn_dx

__all__ = [
    "LaurentInt",
    "format_laurent",
    "parse_laurent",
    "QuiverData",
    "build_quiver",
    "load_quiver",
    "preset",
    "q_cartan",
    "positive_roots",
    "KClass",
    "QLattice",
    "RLinearMap",
    "HeartCharge",
    "gldim",
    "hn_filtration",
    "semistable_table",
    "classify",
    "hn_dx",
]
