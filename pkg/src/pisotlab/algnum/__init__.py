"""Algebraic real numbers given by integer polynomials."""

from .height import disk_count, mahler_measure, weil_height
from .pisot import (PisotClassification, PisotKind, ReducibleError, check_irreducible_screen,
                    classify_pisot)
from .poly import IntPolynomial, poly_gcd, squarefree_part
from .powers import (FracPower, eval_residue, frac_power, power_as_algebraic, power_poly,
                     power_residue, trace_powers)
from .roots import (AlgebraicReal, RootSelectionError, rational_roots, real_roots, refine_root,
                    sturm_isolate)
from .schur import UnitCircleRootError, schur_cohn_inside, unit_circle_factor, unit_circle_roots

__all__ = [
    "AlgebraicReal", "FracPower", "IntPolynomial", "PisotClassification", "PisotKind",
    "ReducibleError", "RootSelectionError", "UnitCircleRootError", "check_irreducible_screen",
    "classify_pisot", "disk_count", "eval_residue", "frac_power", "mahler_measure",
    "poly_gcd", "power_as_algebraic", "power_poly", "power_residue", "rational_roots",
    "real_roots", "refine_root", "schur_cohn_inside", "squarefree_part", "sturm_isolate",
    "trace_powers", "unit_circle_factor", "unit_circle_roots", "weil_height",
]
