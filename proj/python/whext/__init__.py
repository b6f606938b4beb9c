"""Smooth extension operators on discretized function spaces."""

from ._core import (
    ConfigError,
    ContainmentError,
    Operator,
    ValidationError,
    bump,
    check,
    clamp_upper,
    extend,
    oracle_suite,
    plotdata,
    roundtrip_config,
    transition,
    transition_d1,
    validate,
)

__all__ = [
    "ConfigError",
    "ContainmentError",
    "Operator",
    "ValidationError",
    "bump",
    "check",
    "clamp_upper",
    "extend",
    "oracle_suite",
    "plotdata",
    "roundtrip_config",
    "transition",
    "transition_d1",
    "validate",
]
__version__ = "0.1.0"
