"""Exact algebra of infinitesimal cochains on R^n and polynomial de Rham forms."""
from .core import BASE, INF, VERTEX, ContextError, Poly, Var, V, X, Y
from .cosimplicial import DeltaMap, codegeneracy, coface, delta_compose, inf_map
from .derham import DForm, exterior_derivative, normalized_class, normalized_differential, phi, psi
from .infinitesimal import InfElement, InfMonomial, TaylorSplit, normal_form, taylor_split
from .loci import generators, ideal_equality_check, ideal_member
from .parsing import ParseError, parse_form, parse_poly

__all__ = [
    "BASE", "INF", "VERTEX", "ContextError", "Poly", "Var", "V", "X", "Y",
    "DeltaMap", "codegeneracy", "coface", "delta_compose", "inf_map",
    "DForm", "exterior_derivative", "normalized_class", "normalized_differential", "phi", "psi",
    "InfElement", "InfMonomial", "TaylorSplit", "normal_form", "taylor_split",
    "generators", "ideal_equality_check", "ideal_member",
    "ParseError", "parse_form", "parse_poly",
]
__version__ = "0.1.0"
