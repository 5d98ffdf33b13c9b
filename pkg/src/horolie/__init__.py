"""Root systems, Chevalley Lie algebras over F_p, parabolic and horospherical data."""

from .chevalley import LieAlgebra, LieElement, bracket, p_power, structure_constants
from .fplinalg import BACKEND
from .horo import HoroDatum, enumerate_horo, make_horo, quotient_invariants
from .parabolic import ParabolicData, make_parabolic, phi_of
from .rootsys import RootSystem, build_root_system
from .subalg import Subalgebra, classify_over_U, close_under_bracket

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HoroDatum",
    "LieAlgebra",
    "LieElement",
    "ParabolicData",
    "RootSystem",
    "Subalgebra",
    "bracket",
    "build_root_system",
    "classify_over_U",
    "close_under_bracket",
    "enumerate_horo",
    "make_horo",
    "make_parabolic",
    "p_power",
    "phi_of",
    "quotient_invariants",
    "structure_constants",
]
