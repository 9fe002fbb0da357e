"""Fractional powers (-L)^s of matrix generators."""

from ._core import (
    Generator,
    NonConvergence,
    balakrishnan,
    bbw_frac_power,
    c_constant,
    extend,
    ivp_classify,
    normalization_check,
    ode_cross_solve,
    pde_residual,
    semigroup_apply,
    spectral_frac_power,
    trace_constants,
    trace_incremental,
    trace_neumann,
    y_derivative,
)

__all__ = [
    "Generator",
    "NonConvergence",
    "balakrishnan",
    "bbw_frac_power",
    "c_constant",
    "extend",
    "ivp_classify",
    "normalization_check",
    "ode_cross_solve",
    "pde_residual",
    "semigroup_apply",
    "spectral_frac_power",
    "trace_constants",
    "trace_incremental",
    "trace_neumann",
    "y_derivative",
]
