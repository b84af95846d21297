# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Power chain from the propulsive power to stack current, hydrogen flow and
aircraft weight rate, for a stack of `n` cells in the ohmic region.

The cell voltage is affine in the current, `U_c = E_oc - I * r`, and the net
power balance `D * v = eta * n * U_c * I` gives the current as the smaller
root of `r * I**2 - E_oc * I + D * v / (eta * n) = 0`.
"""
from __future__ import annotations

import math

from . import aero
from .errors import ModelDomainError, PowerInfeasibleError
from .models import OperatingPoint, PowerFeasibility
from .validators import AircraftParams, Environment, FuelCellParams

__all__ = (
    "FEASIBILITY_EPSILON",
    "max_net_power",
    "discriminant",
    "charge_from_mass",
    "cell_voltage",
    "stack_current",
    "mass_rate",
    "weight_rate",
    "charge_rate",
    "power_feasibility",
    "feasibility",
    "ohmic_ratio",
    "operating_point",
)

# Relative band of negative round-off in the discriminant that is clamped.
FEASIBILITY_EPSILON: float = 1e-12


def max_net_power(fc: FuelCellParams) -> float:
    """Return the largest net power the stack can deliver (W), where the
    discriminant of the current quadratic vanishes."""
    return (
        fc.open_circuit_voltage**2
        * fc.efficiency
        * fc.n_cells
        / (4.0 * fc.internal_resistance)
    )


def power_feasibility(fc: FuelCellParams, power: float) -> PowerFeasibility:
    p_max: float = max_net_power(fc)
    return PowerFeasibility(
        max_net_power=p_max,
        requested_power=power,
        feasible=power <= p_max * (1.0 + FEASIBILITY_EPSILON),
    )


def discriminant(fc: FuelCellParams, net_power: float) -> float:
    """Return `E_oc**2 - 4 * r * P / (eta * n)` with negative round-off
    inside the feasibility band clamped to zero.

    :raises PowerInfeasibleError: if the power is beyond the envelope.
    """
    e_oc: float = fc.open_circuit_voltage
    value: float = e_oc * e_oc - 4.0 * fc.internal_resistance * net_power / (
        fc.efficiency * fc.n_cells
    )
    if value >= 0.0:
        return value
    if value >= -FEASIBILITY_EPSILON * e_oc * e_oc:
        return 0.0
    raise PowerInfeasibleError(power_feasibility(fc, net_power))


def charge_from_mass(fc: FuelCellParams, m_h: float) -> float:
    """Charge (C) released in one cell by consuming `m_h` kg of hydrogen,
    two electrons per H2 molecule."""
    if m_h < 0.0:
        raise ModelDomainError(f"hydrogen mass must be nonnegative, got {m_h}")
    return 2.0 * fc.faraday * m_h / fc.molar_mass_h2


def cell_voltage(fc: FuelCellParams, current: float) -> float:
    return fc.open_circuit_voltage - current * fc.internal_resistance


def stack_current(fc: FuelCellParams, net_power: float) -> float:
    """Return the stack current (A) that delivers a net propulsive power.

    The smaller root is written as `2 P / (eta n (E_oc + X))`, which equals
    `(E_oc - X) / (2 r)` without the cancellation at low power.
    """
    if net_power < 0.0:
        raise ModelDomainError(
            f"net power must be nonnegative, got {net_power} W"
        )
    x: float = math.sqrt(discriminant(fc, net_power))
    return (
        2.0 * net_power
        / (fc.efficiency * fc.n_cells * (fc.open_circuit_voltage + x))
    )


def mass_rate(fc: FuelCellParams, current: float) -> float:
    """Hydrogen mass consumed by all cells per second (kg/s)."""
    return fc.n_cells * fc.molar_mass_h2 * current / (2.0 * fc.faraday)


def weight_rate(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
) -> float:
    """Rate of weight decrease (N/s), nonnegative.

    The aircraft weight is integrated as `W(t + dt) = W(t) - weight_rate * dt`.
    """
    power: float = aero.drag(params, env, v, w) * v
    return mass_rate(fc, stack_current(fc, power)) * env.gravity


def charge_rate(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
) -> float:
    """Rate of change of the cell charge (A), which is minus the current.

    Evaluated from the drag coefficients directly, as an independent path to
    `-stack_current(D * v)`.
    """
    if v <= 0.0:
        raise ModelDomainError(f"speed must be positive, got {v} m/s")
    eta_n: float = fc.efficiency * fc.n_cells
    r: float = fc.internal_resistance
    e_oc: float = fc.open_circuit_voltage
    rho_s: float = env.air_density * params.wing_area
    inner: float = (
        params.cd0 * rho_s * v**3 + 4.0 * params.k_induced * w * w / (rho_s * v)
    )
    radicand: float = (eta_n * e_oc) ** 2 - 2.0 * eta_n * r * inner
    if radicand < 0.0:
        if radicand < -FEASIBILITY_EPSILON * (eta_n * e_oc) ** 2:
            raise PowerInfeasibleError(power_feasibility(fc, inner / 2.0))
        radicand = 0.0
    return -e_oc / (2.0 * r) + math.sqrt(radicand) / (2.0 * eta_n * r)


def feasibility(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
) -> PowerFeasibility:
    """Compare the drag power at `(v, w)` with the stack envelope."""
    return power_feasibility(fc, aero.drag(params, env, v, w) * v)


def ohmic_ratio(fc: FuelCellParams, current: float) -> float:
    """Return `I * r / U_c`, the ohmic loss relative to the cell voltage."""
    u_c: float = cell_voltage(fc, current)
    if u_c <= 0.0:
        raise ModelDomainError(
            f"cell voltage must stay positive, got {u_c} V at {current} A"
        )
    return current * fc.internal_resistance / u_c


def operating_point(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
) -> OperatingPoint:
    d: float = aero.drag(params, env, v, w)
    power: float = d * v
    current: float = stack_current(fc, power)
    return OperatingPoint(
        v=v,
        w=w,
        drag=d,
        power=power,
        current=current,
        cell_voltage=cell_voltage(fc, current),
        weight_rate=mass_rate(fc, current) * env.gravity,
    )
