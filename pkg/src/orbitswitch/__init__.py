"""Orbit switching at a singular point: the oscillator x' = y, y' = (y^2 - x^2)/(2x).

Every orbit is a circle through the origin, so solutions are not unique
there.  The package integrates the system, builds the family of composite
solutions, selects among them, and checks the associated exact plane flows.
"""
from .dynamics import (ControlChoice, OrbitParams, PolarState, SingularityError, State,
                       closed_form_state, entropy, orbit_params_from_initial, rhs_dafermos,
                       rhs_modified)
from .integrators import (IntegrationConfig, IntegrationError, TrajectoryLog, entropy_drift,
                          integrate)
from .trajectory import (CompositeTrajectory, EntropyProfile, build_composite,
                         entropy_rate_select, first_arrival_time, profile_for)

__version__ = "0.1.0"

__all__ = [
    "State", "OrbitParams", "PolarState", "ControlChoice", "SingularityError",
    "entropy", "rhs_dafermos", "rhs_modified", "orbit_params_from_initial", "closed_form_state",
    "IntegrationConfig", "IntegrationError", "TrajectoryLog", "integrate", "entropy_drift",
    "EntropyProfile", "CompositeTrajectory", "build_composite", "profile_for",
    "first_arrival_time", "entropy_rate_select",
]
