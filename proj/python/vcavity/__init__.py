"""Entanglement dynamics of two V-type atoms sharing a dissipative cavity."""

from ._vcavity import (
    ModelParams,
    VcavityError,
    cross_validate,
    d_pm,
    g_pm,
    named_initial_state,
    negativity,
    negativity_closed_form,
    preset_names,
    propagate,
    pt_eigenvalues,
    q_coeffs,
    run_preset,
    steady_amplitudes,
    trajectory,
    validate,
)

__all__ = [
    "ModelParams",
    "VcavityError",
    "cross_validate",
    "d_pm",
    "g_pm",
    "named_initial_state",
    "negativity",
    "negativity_closed_form",
    "preset_names",
    "propagate",
    "pt_eigenvalues",
    "q_coeffs",
    "run_preset",
    "steady_amplitudes",
    "trajectory",
    "validate",
]
