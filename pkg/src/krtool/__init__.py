"""Kronrod-Reeb graphs, S/P/N singularities and homotopy invariants of functions on surfaces."""

from .critical import CriticalVertex, PLFunction, detect_critical, link_profile, load_values, morse_check
from .errors import KRError
from .mesh import SurfaceInvariants, TriSurface, build_surface, invariants, load_mesh
from .reeb import KRGraph, build_kr_graph, to_dot
from .report import HomotopyReport, orbit_report

__all__ = [
    "CriticalVertex",
    "HomotopyReport",
    "KRError",
    "KRGraph",
    "PLFunction",
    "SurfaceInvariants",
    "TriSurface",
    "build_kr_graph",
    "build_surface",
    "detect_critical",
    "invariants",
    "link_profile",
    "load_mesh",
    "load_values",
    "morse_check",
    "orbit_report",
    "to_dot",
]

__version__ = "0.1.0"
