"""Conserved-function flow generator and its small expression language."""
from .diff import differentiate
from .expr import BinOp, Call, DomainError, Expr, Neg, Num, Var
from .generator import (GeneratorSpec, InconsistentPressureError, ZeroWeightError, catalog,
                        conservation_residual, continuity_residual_generic, density_from_generator,
                        density_integral, density_refinement, loop_integral,
                        pressure_semi_inverse, velocity_from_generator)
from .parser import ParseError, parse_expression

__all__ = [
    "Expr", "Num", "Var", "Neg", "BinOp", "Call", "DomainError", "ParseError",
    "parse_expression", "differentiate", "GeneratorSpec", "ZeroWeightError",
    "InconsistentPressureError", "catalog", "velocity_from_generator",
    "density_from_generator", "conservation_residual", "continuity_residual_generic",
    "pressure_semi_inverse", "loop_integral", "density_integral", "density_refinement",
]
