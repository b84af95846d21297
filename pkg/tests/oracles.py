"""Independent reference computations shared by the test cases."""
from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.optimize import golden

from h2cruise.core import fuelcell
from h2cruise.core.validators import (
    AircraftParams,
    Environment,
    FuelCellParams,
)

HY4_AIRCRAFT: dict = {
    "wing_area": 17.5,
    "cd0": 0.025,
    "k_induced": 0.039,
    "initial_weight": 14709.975,
    "fuel_weight": 88.25985,
}

HY4_FUELCELL: dict = {
    "n_cells": 1760,
    "internal_resistance": 0.005,
    "open_circuit_voltage": 1.1,
    "efficiency": 0.44,
}


def hy4(
    n_cells: int = 1760, **aircraft
) -> tuple[FuelCellParams, AircraftParams, Environment]:
    """Return the HY4 records at 1 km, with optional airframe overrides."""
    return (
        FuelCellParams.parse_obj(HY4_FUELCELL | {"n_cells": n_cells}),
        AircraftParams.parse_obj(HY4_AIRCRAFT | aircraft),
        Environment.at_altitude(1000.0),
    )


def central_difference(f: Callable[[float], float], x: float, h: float):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def fuel_per_metre_minimum(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    w: float,
    v_lo: float,
    v_hi: float,
) -> float:
    """Golden-section minimiser of `weight_rate(v) / v` inside the
    envelope, bracketed from a coarse grid."""

    def objective(v: float) -> float:
        return fuelcell.weight_rate(fc, params, env, v, w) / v

    grid = np.linspace(v_lo * 1.01, v_hi * 0.99, 200)
    k = int(np.argmin([objective(v) for v in grid]))
    k = min(max(k, 1), len(grid) - 2)
    return golden(
        objective, brack=(grid[k - 1], grid[k], grid[k + 1]), tol=1e-12
    )


def richardson_difference(f: Callable[[float], float], x: float, h: float):
    """Central difference with one Richardson extrapolation, fourth order
    in `h`."""
    half: float = central_difference(f, x, 0.5 * h)
    return (4.0 * half - central_difference(f, x, h)) / 3.0
