"""Exact plane flow fields built from the oscillator orbits, and their checks."""
from .airy import (airy_equilibrium_residual, airy_hessian, airy_lambda, airy_pde_residual,
                   airy_stresses, airy_value)
from .fields import (FlowFields, Region, boundary_normal_flux, continuity_residual,
                     continuity_residual_fd, divergence, euler_fields, euler_momentum_residual,
                     euler_momentum_residual_fd, pressure, rankine_hugoniot_check, region_of,
                     strain_rate)
from .stress import (StressTensor, Viscosities, closed_form_stress, constitutive_stress,
                     fundamental_quotients, fundamental_relation_check, ns_momentum_residual,
                     ns_stress, trace_gap, viscosities)
from .verify import DEFAULT_TOLERANCES, DomainSpec, ResidualReport, run_verification

__all__ = [
    "FlowFields", "Region", "StressTensor", "Viscosities", "DomainSpec", "ResidualReport",
    "DEFAULT_TOLERANCES", "region_of", "euler_fields", "pressure", "divergence",
    "continuity_residual", "continuity_residual_fd", "euler_momentum_residual",
    "euler_momentum_residual_fd", "boundary_normal_flux", "rankine_hugoniot_check",
    "strain_rate", "viscosities", "ns_stress", "closed_form_stress", "constitutive_stress",
    "ns_momentum_residual", "fundamental_quotients", "fundamental_relation_check", "trace_gap",
    "airy_value", "airy_hessian", "airy_stresses", "airy_equilibrium_residual", "airy_lambda",
    "airy_pde_residual", "run_verification",
]
