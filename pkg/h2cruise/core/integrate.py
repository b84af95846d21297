# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Fixed-step RK4 integration of the cruise from `x = 0` to `x = x_d`.

The state vector is `[x, W, J_W, q, E_elec, E_prop]` where `q` is the stack
current integral (C), `E_elec` the integral of `eta * n * U_c * I` and
`E_prop` the integral of `D * v` (J). The last step is shortened so that the
position lands on `x_d`.
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .errors import RangeExceededError
from .models import CruiseRun, CruiseState
from .plant import CruisePlant
from .utils import get_logger

__all__ = (
    "SpeedFunction",
    "rk4_step",
    "land_step",
    "CruiseDynamics",
    "run_cruise",
)

logger = get_logger(__name__)

SpeedFunction = Callable[[float, float], float]
Derivative = Callable[[float, np.ndarray], np.ndarray]

# Position miss of the landing step, relative to the destination.
LANDING_TOLERANCE: float = 1e-12
LANDING_MAX_ITER: int = 4


def rk4_step(
    f: Derivative,
    t: float,
    y: np.ndarray,
    h: float,
    k1: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Classical fourth-order Runge-Kutta step.

    A precomputed slope `k1 = f(t, y)` may be passed in to skip the first
    stage.
    """
    if k1 is None:
        k1 = f(t, y)
    k2: np.ndarray = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3: np.ndarray = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4: np.ndarray = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class CruiseDynamics:
    """Right-hand side of the cruise state equations.

    In the suboptimal mode `J_W` is held at zero; in the optimal mode it
    follows `dJ_W/dt = (1 + J_W) * dWdot/dW`.
    """

    def __init__(
        self,
        plant: CruisePlant,
        speed: SpeedFunction,
        optimal: bool = False,
    ):
        self.plant = plant
        self.speed = speed
        self.optimal = optimal

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        plant: CruisePlant = self.plant
        w: float = y[1]
        j_w: float = y[2] if self.optimal else 0.0
        v: float = self.speed(w, j_w)
        power: float = plant.power(v, w)
        x_root: float = plant.root(power)
        current: float = plant.current(power, x_root)
        cell_voltage: float = plant.e_oc - current * plant.resistance
        return np.array(
            [
                v,
                -plant.fc.n_cells * plant.rate_factor * current,
                (
                    (1.0 + j_w) * plant.weight_rate_dw(v, w)
                    if self.optimal
                    else 0.0
                ),
                current,
                plant.eta_n * cell_voltage * current,
                power,
            ]
        )


def land_step(
    f: Derivative,
    t: float,
    y: np.ndarray,
    k1: np.ndarray,
    x_target: float,
    h_max: float,
) -> tuple[float, np.ndarray]:
    """Return the step length and RK4 state that put the position on
    `x_target`, by Newton on the step length with `dx/dh ~ v`.
    """
    v: float = float(k1[0])
    h: float = min((x_target - y[0]) / v, h_max)
    y_h: np.ndarray = rk4_step(f, t, y, h, k1)
    for _ in range(LANDING_MAX_ITER):
        miss: float = float(y_h[0] - x_target)
        if abs(miss) <= LANDING_TOLERANCE * max(1.0, x_target):
            break
        h = min(max(h - miss / v, 0.0), h_max)
        y_h = rk4_step(f, t, y, h, k1)
    return h, y_h


def run_cruise(
    plant: CruisePlant,
    speed: SpeedFunction,
    *,
    x_d: float,
    w0: float,
    dry_weight: float,
    dt: float,
    j_w0: float = 0.0,
    optimal: bool = False,
) -> CruiseRun:
    """Integrate the cruise with a fixed step `dt` until `x = x_d`.

    The first slope of every step also gives the speed recorded for the
    sample at the start of that step.

    :raises RangeExceededError: if the weight reaches `dry_weight` first.
    """
    dynamics = CruiseDynamics(plant, speed, optimal=optimal)
    t: float = 0.0
    y: np.ndarray = np.array([0.0, w0, j_w0, 0.0, 0.0, 0.0])
    samples: list[CruiseState] = []
    steps: int = 0

    def record(t_now: float, y_now: np.ndarray, k1_now: np.ndarray) -> None:
        samples.append(
            CruiseState(
                t=t_now,
                x=float(y_now[0]),
                w=float(y_now[1]),
                v=float(k1_now[0]),
                j_w=float(y_now[2]),
            )
        )

    k1: np.ndarray = dynamics(t, y)
    record(t, y, k1)
    while True:
        y_next: np.ndarray = rk4_step(dynamics, t, y, dt, k1)
        if y_next[0] >= x_d:
            h_last, y_next = land_step(dynamics, t, y, k1, x_d, dt)
            y_next[0] = x_d
            t += h_last
        else:
            t += dt
        steps += 1
        if y_next[1] <= dry_weight:
            raise RangeExceededError(
                f"weight reached the dry-weight floor {dry_weight:.6g} N at "
                f"x = {y_next[0]:.6g} m, before the destination {x_d:.6g} m"
            )
        y = y_next
        k1 = dynamics(t, y)
        record(t, y, k1)
        if y[0] >= x_d:
            break

    logger.debug(
        "Integrated {} RK4 steps to x_d={:.6g} m in {:.6g} s", steps, x_d, t
    )
    return CruiseRun(
        samples=samples,
        t_f=t,
        w_f=float(y[1]),
        j_w=float(y[2]),
        charge=float(y[3]),
        electric_energy=float(y[4]),
        propulsive_energy=float(y[5]),
        steps=steps,
    )
