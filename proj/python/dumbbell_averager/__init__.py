"""Averaged bifurcation functions and periodic-orbit verification for the dumbbell satellite."""

from ._core import (
    AveragedField,
    ConfigError,
    DumbbellError,
    Torque,
    TorqueSyntaxError,
    bundled_config,
    bundled_config_names,
    closed_form_solution,
    linearized_coefficients,
    monodromy_gap,
    parse_torque,
    printed_reference_field,
    solve,
    verify,
)

__all__ = [
    "AveragedField",
    "ConfigError",
    "DumbbellError",
    "Torque",
    "TorqueSyntaxError",
    "bundled_config",
    "bundled_config_names",
    "closed_form_solution",
    "linearized_coefficients",
    "monodromy_gap",
    "parse_torque",
    "printed_reference_field",
    "solve",
    "verify",
]
