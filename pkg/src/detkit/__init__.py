"""Exact determinantal algebra over polynomial rings."""

from .poly import DEFAULT_PRIME, MonomialOrder, Polynomial, Ring, VarTable, parse_poly
from .matrix import PolyMatrix, adjugate, cofactor, determinant, minor, minor_ideal_gens
from .groebner import Ideal, buchberger, ideal_height, multiplicity
from .homology import FreeComplex, GradedFreeModule, be_acyclicity, is_complex
from .suites import SUITES, run_suite

__all__ = ["DEFAULT_PRIME", "MonomialOrder", "Polynomial", "Ring", "VarTable", "parse_poly",
           "PolyMatrix", "adjugate", "cofactor", "determinant", "minor", "minor_ideal_gens",
           "Ideal", "buchberger", "ideal_height", "multiplicity",
           "FreeComplex", "GradedFreeModule", "be_acyclicity", "is_complex",
           "SUITES", "run_suite"]
