# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Steady level-flight drag polar and its partial derivatives.

With `A = 0.5 * CD0 * rho * S` and `B = 2 * K * W**2 / (rho * S)` the drag is
`D = A * v**2 + B / v**2`.
"""
from __future__ import annotations

from .errors import ModelDomainError
from .validators import AircraftParams, Environment

__all__ = (
    "parasite_factor",
    "induced_factor",
    "drag",
    "drag_dv",
    "drag_dvv",
    "drag_dw",
    "min_drag_speed",
    "min_power_speed",
)


def _check_speed(v: float) -> None:
    if v <= 0.0:
        raise ModelDomainError(
            f"speed must be positive for the drag polar, got {v} m/s"
        )


def parasite_factor(params: AircraftParams, env: Environment) -> float:
    """Return `A = 0.5 * CD0 * rho * S` (N s2/m2)."""
    return 0.5 * params.cd0 * env.air_density * params.wing_area


def induced_factor(params: AircraftParams, env: Environment, w: float) -> float:
    """Return `B = 2 * K * W**2 / (rho * S)` (N m2/s2)."""
    return 2.0 * params.k_induced * w * w / (env.air_density * params.wing_area)


def drag(params: AircraftParams, env: Environment, v: float, w: float) -> float:
    _check_speed(v)
    v2: float = v * v
    return parasite_factor(params, env) * v2 + induced_factor(params, env, w) / v2


def drag_dv(
    params: AircraftParams, env: Environment, v: float, w: float
) -> float:
    """Partial derivative of drag with respect to speed (N s/m)."""
    _check_speed(v)
    return (
        2.0 * parasite_factor(params, env) * v
        - 2.0 * induced_factor(params, env, w) / v**3
    )


def drag_dvv(
    params: AircraftParams, env: Environment, v: float, w: float
) -> float:
    _check_speed(v)
    return (
        2.0 * parasite_factor(params, env)
        + 6.0 * induced_factor(params, env, w) / v**4
    )


def drag_dw(
    params: AircraftParams, env: Environment, v: float, w: float
) -> float:
    """Partial derivative of drag with respect to weight (dimensionless)."""
    _check_speed(v)
    return (
        4.0 * params.k_induced * w
        / (env.air_density * params.wing_area * v * v)
    )


def min_drag_speed(params: AircraftParams, env: Environment, w: float) -> float:
    """Speed where parasite and induced drag are equal."""
    return (induced_factor(params, env, w) / parasite_factor(params, env)) ** 0.25


def min_power_speed(
    params: AircraftParams, env: Environment, w: float
) -> float:
    """Speed that minimises the drag power `D * v`."""
    return (
        induced_factor(params, env, w) / (3.0 * parasite_factor(params, env))
    ) ** 0.25
