"""Attractors of iterated function systems with choice."""

from ._choice_dyn import (
    PSET0,
    PSET1,
    ConfigError,
    MalariaParams,
    accepts,
    basic_reproduction_number,
    chaos_game,
    d_sigma,
    fixed_points,
    global_attractor,
    hausdorff,
    in_subshift,
    individual_attractor,
    normalize,
    omega_limit,
    shift,
    slices,
    step_admissible,
    step_bound,
    verify,
)

__version__ = "0.1.0"
