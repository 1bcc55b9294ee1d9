"""Numerical experiments on Hadamard spaces."""

from ._hadamard import (
    CapabilityError,
    Error,
    UsageError,
    circumcenter,
    commands,
    diameter,
    gradient_floor,
    jung_bound,
    jung_check,
    k_n,
    r_n,
    regular_simplex,
    run,
    s_n,
    space,
    version,
)

__version__ = version()

__all__ = [
    "CapabilityError",
    "Error",
    "UsageError",
    "circumcenter",
    "commands",
    "diameter",
    "gradient_floor",
    "jung_bound",
    "jung_check",
    "k_n",
    "r_n",
    "regular_simplex",
    "run",
    "s_n",
    "space",
    "version",
]
