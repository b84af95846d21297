# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Flattened drag-polar and fuel-cell chain used in the solver hot loops.

The functions of `aero` and `fuelcell` read the parameter records on every
call. `CruisePlant` folds them once into a handful of floats and exposes the
weight rate with its speed and weight derivatives, and the unsquared
optimality residual built from them.

With `P = D * v`, `X = sqrt(E_oc**2 - 4 r P / (eta n))` and
`a = M_H * g / (2 F)`, the weight rate is `2 a P / (eta (E_oc + X))` and its
speed derivative is `a * dP/dv / (eta * X)`.
"""
from __future__ import annotations

import math

from scipy.optimize import brentq

from . import aero, fuelcell
from .errors import ModelDomainError, PowerInfeasibleError
from .validators import AircraftParams, Environment, FuelCellParams

__all__ = ("CruisePlant",)


class CruisePlant:
    __slots__ = (
        "fc",
        "params",
        "env",
        "parasite",
        "induced_per_w2",
        "eta",
        "eta_n",
        "resistance",
        "e_oc",
        "rate_factor",
        "p_max",
    )

    def __init__(
        self,
        fc: FuelCellParams,
        params: AircraftParams,
        env: Environment,
    ):
        self.fc = fc
        self.params = params
        self.env = env
        self.parasite: float = aero.parasite_factor(params, env)
        self.induced_per_w2: float = aero.induced_factor(params, env, 1.0)
        self.eta: float = fc.efficiency
        self.eta_n: float = fc.efficiency * fc.n_cells
        self.resistance: float = fc.internal_resistance
        self.e_oc: float = fc.open_circuit_voltage
        self.rate_factor: float = (
            fc.molar_mass_h2 * env.gravity / (2.0 * fc.faraday)
        )
        self.p_max: float = fuelcell.max_net_power(fc)

    def power(self, v: float, w: float) -> float:
        if v <= 0.0:
            raise ModelDomainError(f"speed must be positive, got {v} m/s")
        return self.parasite * v**3 + self.induced_per_w2 * w * w / v

    def power_dv(self, v: float, w: float) -> float:
        return 3.0 * self.parasite * v * v - self.induced_per_w2 * w * w / (v * v)

    def power_dvv(self, v: float, w: float) -> float:
        return 6.0 * self.parasite * v + 2.0 * self.induced_per_w2 * w * w / v**3

    def root(self, power: float) -> float:
        """Return `X`, the square root of the current-quadratic
        discriminant."""
        e2: float = self.e_oc * self.e_oc
        value: float = e2 - 4.0 * self.resistance * power / self.eta_n
        if value < 0.0:
            if value < -fuelcell.FEASIBILITY_EPSILON * e2:
                raise PowerInfeasibleError(
                    fuelcell.power_feasibility(self.fc, power)
                )
            value = 0.0
        return math.sqrt(value)

    def _interior_root(self, power: float) -> float:
        x: float = self.root(power)
        if x == 0.0:
            raise ModelDomainError(
                "derivatives of the weight rate are unbounded on the power "
                "envelope boundary"
            )
        return x

    def current(self, power: float, x: float) -> float:
        return 2.0 * power / (self.eta_n * (self.e_oc + x))

    def weight_rate(self, v: float, w: float) -> float:
        p: float = self.power(v, w)
        return 2.0 * self.rate_factor * p / (self.eta * (self.e_oc + self.root(p)))

    def weight_rate_dv(self, v: float, w: float) -> float:
        x: float = self._interior_root(self.power(v, w))
        return self.rate_factor * self.power_dv(v, w) / (self.eta * x)

    def weight_rate_dvv(self, v: float, w: float) -> float:
        x: float = self._interior_root(self.power(v, w))
        dp: float = self.power_dv(v, w)
        return (
            self.rate_factor
            / (self.eta * x)
            * (
                self.power_dvv(v, w)
                + 2.0 * self.resistance * dp * dp / (self.eta_n * x * x)
            )
        )

    def weight_rate_dw(self, v: float, w: float) -> float:
        """Partial derivative of the weight rate with respect to the weight,
        through the induced drag."""
        x: float = self._interior_root(self.power(v, w))
        drag_dw: float = 2.0 * self.induced_per_w2 * w / (v * v)
        return self.rate_factor * v * drag_dw / (self.eta * x)

    def residual(self, v: float, w: float, j_w: float, ci: float) -> float:
        """Unsquared optimality residual
        `(1 + J_W) * (Wdot - v * dWdot/dv) + C_I`."""
        p: float = self.power(v, w)
        x: float = self._interior_root(p)
        rate: float = 2.0 * self.rate_factor * p / (self.eta * (self.e_oc + x))
        rate_dv: float = self.rate_factor * self.power_dv(v, w) / (self.eta * x)
        return (1.0 + j_w) * (rate - v * rate_dv) + ci

    def residual_dv(
        self, v: float, w: float, j_w: float, ci: float = 0.0
    ) -> float:
        # `ci` keeps the signature aligned with `residual` for scipy solvers.
        return -(1.0 + j_w) * v * self.weight_rate_dvv(v, w)

    def cost_rate(self, v: float, w: float, j_w: float, ci: float) -> float:
        """Cost per metre of the pointwise cost rate,
        `((1 + J_W) * Wdot + C_I) / v`."""
        return ((1.0 + j_w) * self.weight_rate(v, w) + ci) / v

    def min_power_speed(self, w: float) -> float:
        return (self.induced_per_w2 * w * w / (3.0 * self.parasite)) ** 0.25

    def min_drag_speed(self, w: float) -> float:
        return (self.induced_per_w2 * w * w / self.parasite) ** 0.25

    def speed_range(self, w: float) -> tuple[float, float]:
        """Return the speeds `(v_lo, v_hi)` where the drag power meets the
        stack envelope. The discriminant is positive strictly between them.

        :raises PowerInfeasibleError: if even the minimum-power speed needs
            more than the envelope.
        """
        v_mp: float = self.min_power_speed(w)
        p_min: float = self.power(v_mp, w)
        if p_min >= self.p_max:
            raise PowerInfeasibleError(
                fuelcell.power_feasibility(self.fc, p_min),
                message=(
                    f"no speed is feasible at W = {w:.6g} N: the minimum "
                    f"drag power {p_min:.6g} W exceeds the stack envelope "
                    f"{self.p_max:.6g} W"
                ),
            )

        def excess(v: float) -> float:
            return self.power(v, w) - self.p_max

        lo: float = 0.5 * v_mp
        while excess(lo) <= 0.0:
            lo *= 0.5
        hi: float = 2.0 * v_mp
        while excess(hi) <= 0.0:
            hi *= 2.0
        return (
            brentq(excess, lo, v_mp, xtol=1e-12),
            brentq(excess, v_mp, hi, xtol=1e-12),
        )
