"""Exact symbolic kernel for the second cohomology of the Witt algebra.

Formal delta-function calculus, operator product expansions, Witt and
Virasoro brackets and low-degree Lie algebra cohomology, all over Q[c].
"""
__version__ = "0.1.0"

from .cohomology import (Cochain, CocycleSolveReport, ExtensionTable, build_central_extension,
                         coboundary, diagonal_cocycle_solve, is_coboundary, is_cocycle, wedge)
from .distributions import (BiSeries, DeltaExpansion, Window, coefficient_formula,
                            delta_derivative, expand_izw, is_local, mul_zw_power, project_pi,
                            realize, res_z_field)
from .errors import (NotACocycle, UnderdeterminedWindow, UndefinedValue, UnsupportedDegree,
                     VariableMismatch, WindowExhausted)
from .exchange import (ExchangeSolution, derive_tt, identify_c1, solve_exchange_constraints,
                       verify_t_identification)
from .fields import (CONST, T, FieldPolynomial, FieldSymbol, FieldTerm, ModeElement, OpeData,
                     mode_bracket_from_ope, mode_field_bracket, residue_pairing_bracket, tt_ope,
                     weight_bound_check, weight_of)
from .laurent import LaurentPoly, gen_binomial
from .lie import (DiagonalCocycle, VectorField, VirasoroElement, WittElement, jacobi_check,
                  mode_vf_iso_check, vf_bracket, virasoro_bracket, virasoro_cocycle,
                  witt_bracket)
from .scalars import C, CentralScalar, as_scalar

__all__ = [
    "__version__", "Cochain", "CocycleSolveReport", "ExtensionTable",
    "build_central_extension", "coboundary", "diagonal_cocycle_solve", "is_coboundary",
    "is_cocycle", "wedge", "BiSeries", "DeltaExpansion", "Window", "coefficient_formula",
    "delta_derivative", "expand_izw", "is_local", "mul_zw_power", "project_pi", "realize",
    "res_z_field", "NotACocycle", "UnderdeterminedWindow", "UndefinedValue",
    "UnsupportedDegree", "VariableMismatch", "WindowExhausted", "ExchangeSolution",
    "derive_tt", "identify_c1", "solve_exchange_constraints", "verify_t_identification",
    "CONST", "T", "FieldPolynomial", "FieldSymbol", "FieldTerm", "ModeElement", "OpeData",
    "mode_bracket_from_ope", "mode_field_bracket", "residue_pairing_bracket", "tt_ope",
    "weight_bound_check", "weight_of", "LaurentPoly", "gen_binomial", "DiagonalCocycle",
    "VectorField", "VirasoroElement", "WittElement", "jacobi_check", "mode_vf_iso_check",
    "vf_bracket", "virasoro_bracket", "virasoro_cocycle", "witt_bracket", "C", "CentralScalar",
    "as_scalar",
]
