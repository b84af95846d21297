# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Cruise-speed optimality solvers.

The necessary condition for a DOC-optimal speed, after eliminating the
position costate with `H = 0`, reads

    (1 + J_W) * (Wdot - v * dWdot/dv) + C_I = 0

which is the stationarity condition of the cost per metre
`((1 + J_W) * Wdot + C_I) / v`. Isolating the square root of the current
discriminant and squaring turns it into a degree-8 polynomial in `v`, whose
real roots are filtered back against the unsquared equation.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.optimize import brentq, newton

from . import integrate
from .errors import (
    ModelBaseError,
    ModelDomainError,
    NoSolutionError,
    ShootingNotConverged,
)
from .models import (
    CruiseRun,
    CruiseState,
    RejectedRoot,
    RejectReason,
    ShootingResult,
    SpeedSolution,
)
from .plant import CruisePlant
from .utils import Params, get_logger
from .validators import AircraftParams, CostModel, Environment, FuelCellParams

__all__ = (
    "PARAMS",
    "optimality_residual",
    "optimality_residual_dv",
    "polynomial_coefficients",
    "feasible_speed_range",
    "solve_speed",
    "bracket_speed_roots",
    "hamiltonian",
    "hamiltonian_dv",
    "hamiltonian_dw",
    "costate_x",
    "costate_rate",
    "SpeedTracker",
    "hamiltonian_drift",
    "solve_shooting",
)

logger = get_logger(__name__)

PARAMS = Params(param_name="parameters.yaml")


def _check_costate(j_w: float) -> None:
    if 1.0 + j_w <= 0.0:
        raise ModelDomainError(
            f"weight costate must be greater than -1, got {j_w}"
        )


def optimality_residual(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    v: float,
    w: float,
    j_w: float = 0.0,
) -> float:
    """Return the unsquared optimality residual (N/s) at speed `v`.

    It is `+inf`-like near the low-speed envelope boundary and `-inf`-like
    near the high-speed one, and strictly decreasing in between.
    """
    return CruisePlant(fc, params, env).residual(v, w, j_w, cost.cost_index)


def optimality_residual_dv(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
    j_w: float = 0.0,
) -> float:
    return CruisePlant(fc, params, env).residual_dv(v, w, j_w)


def feasible_speed_range(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    w: float,
) -> tuple[float, float]:
    return CruisePlant(fc, params, env).speed_range(w)


def _coefficients(
    plant: CruisePlant, w: float, j_w: float, ci: float
) -> list[float]:
    _check_costate(j_w)
    a: float = plant.parasite
    b: float = plant.induced_per_w2 * w * w
    eta: float = plant.eta
    r: float = plant.resistance
    e_oc: float = plant.e_oc
    n: float = plant.fc.n_cells
    scale: float = (1.0 + j_w) * plant.rate_factor
    beta: float = n * e_oc * e_oc / (2.0 * r)
    gamma: float = n * e_oc / (2.0 * r) + ci / scale
    g2: float = gamma * gamma
    return [
        9.0 * b * b / (eta * eta),
        -6.0 * beta * b / eta + 4.0 * g2 * r * b / (eta * n),
        beta * beta - g2 * e_oc * e_oc,
        0.0,
        -6.0 * a * b / (eta * eta),
        2.0 * a * beta / eta + 4.0 * g2 * r * a / (eta * n),
        0.0,
        0.0,
        a * a / (eta * eta),
    ]


def polynomial_coefficients(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    w: float,
    j_w: float = 0.0,
) -> list[float]:
    """Return the coefficients `c0..c8` (lowest degree first) of the
    polynomial whose positive roots include every root of the optimality
    equation.

    The equation is divided by `(1 + J_W) * M_H * g / (2F)` and multiplied by
    `X * v` to give `gamma * X * v = beta * v + (A v**4 - 3 B) / eta`, which
    is then squared.
    """
    return _coefficients(
        CruisePlant(fc, params, env), w, j_w, cost.cost_index
    )


def _polish(coefficients: np.ndarray, u: float) -> float:
    """Newton-polish a real root of a scaled polynomial."""
    derivative: np.ndarray = npp.polyder(coefficients)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        try:
            polished: float = newton(
                lambda x: npp.polyval(x, coefficients),
                u,
                fprime=lambda x: npp.polyval(x, derivative),
                tol=PARAMS.solver.newton_tolerance,
                maxiter=PARAMS.solver.newton_max_iter,
            )
        except (RuntimeError, ZeroDivisionError):
            return u
    if not np.isfinite(polished) or abs(polished - u) > 1e-6 * max(1.0, abs(u)):
        return u
    return float(polished)


@dataclass
class _Candidate:
    v: float
    residual: float
    cost_rate: float


def _solve_speed(
    plant: CruisePlant, ci: float, w: float, j_w: float = 0.0
) -> SpeedSolution:
    _check_costate(j_w)
    v_lo, v_hi = plant.speed_range(w)
    coefficients: list[float] = _coefficients(plant, w, j_w, ci)

    # Scale by the minimum-drag speed so the coefficients stay balanced.
    s: float = plant.min_drag_speed(w)
    scaled: np.ndarray = np.array(
        [c * s**k for k, c in enumerate(coefficients)]
    )
    scaled /= np.max(np.abs(scaled))
    roots: np.ndarray = npp.polyroots(scaled)

    spurious_tol: float = PARAMS.solver.spurious_tolerance * max(1.0, ci)
    all_real: list[float] = []
    rejected: list[RejectedRoot] = []
    candidates: list[_Candidate] = []
    for u in sorted(roots, key=lambda z: z.real):
        if abs(u.imag) > PARAMS.solver.imag_tolerance * max(1.0, abs(u)):
            continue
        v: float = s * _polish(scaled, float(u.real))
        if v <= 0.0:
            all_real.append(v)
            rejected.append(RejectedRoot(v, RejectReason.NEGATIVE))
            continue
        if not v_lo < v < v_hi:
            all_real.append(v)
            rejected.append(RejectedRoot(v, RejectReason.DISCRIMINANT))
            continue
        residual: float = plant.residual(v, w, j_w, ci)
        if abs(residual) > spurious_tol:
            all_real.append(v)
            rejected.append(RejectedRoot(v, RejectReason.SPURIOUS))
            continue
        v = _refine(plant, v, w, j_w, ci, v_lo, v_hi)
        all_real.append(v)
        if not _is_local_minimum(plant, v, w, j_w, v_lo, v_hi):
            rejected.append(RejectedRoot(v, RejectReason.NOT_MINIMUM))
            continue
        candidates.append(
            _Candidate(
                v=v,
                residual=plant.residual(v, w, j_w, ci),
                cost_rate=plant.cost_rate(v, w, j_w, ci),
            )
        )

    if not candidates:
        raise NoSolutionError(
            rejected,
            f"no admissible root of the optimality equation at "
            f"C_I = {ci:.6g}, W = {w:.6g} N, J_W = {j_w:.6g}",
        )

    best: _Candidate = candidates[0]
    for candidate in candidates[1:]:
        if candidate.cost_rate < best.cost_rate - (
            PARAMS.solver.tie_tolerance * abs(best.cost_rate)
        ):
            best = candidate

    j_x: float = -(1.0 + j_w) * plant.weight_rate_dv(best.v, w)
    solution = SpeedSolution(
        v_opt=best.v,
        residual=best.residual,
        all_real_roots=all_real,
        rejected_roots=rejected,
        j_w=j_w,
        j_x=j_x,
        hamiltonian_value=(
            (1.0 + j_w) * plant.weight_rate(best.v, w) + j_x * best.v + ci
        ),
    )
    logger.debug(
        "Solved speed {:.9g} m/s at C_I={:.6g}, W={:.6g} N ({} real roots, "
        "{} rejected)",
        solution.v_opt,
        ci,
        w,
        len(all_real),
        len(rejected),
    )
    return solution


def _refine(
    plant: CruisePlant,
    v: float,
    w: float,
    j_w: float,
    ci: float,
    v_lo: float,
    v_hi: float,
) -> float:
    """Newton step on the unsquared equation, kept only if it stays inside
    the feasible interval."""
    try:
        refined: float = newton(
            plant.residual,
            v,
            fprime=plant.residual_dv,
            args=(w, j_w, ci),
            tol=PARAMS.solver.newton_tolerance,
            maxiter=PARAMS.solver.newton_max_iter,
        )
    except (RuntimeError, ModelBaseError):
        return v
    if v_lo < refined < v_hi:
        return float(refined)
    return v


def _is_local_minimum(
    plant: CruisePlant,
    v: float,
    w: float,
    j_w: float,
    v_lo: float,
    v_hi: float,
) -> bool:
    """Second difference of the Hamiltonian in `v` with `J_x` held fixed.

    The `J_x * v` and `C_I` terms are affine in `v` and drop out.
    """
    delta: float = min(
        PARAMS.solver.min_check_step * v, 0.5 * (v - v_lo), 0.5 * (v_hi - v)
    )
    second: float = (1.0 + j_w) * (
        plant.weight_rate(v + delta, w)
        - 2.0 * plant.weight_rate(v, w)
        + plant.weight_rate(v - delta, w)
    )
    return second > 0.0


def solve_speed(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    w: float,
    j_w: float = 0.0,
) -> SpeedSolution:
    """Return the DOC-optimal cruise speed at weight `w` from the real roots
    of the degree-8 polynomial.

    With `j_w = 0` this is the suboptimal solution that ignores the weight
    costate.

    :raises PowerInfeasibleError: if no speed is inside the stack envelope.
    :raises NoSolutionError: if every real root is rejected.
    """
    return _solve_speed(CruisePlant(fc, params, env), cost.cost_index, w, j_w)


def bracket_speed_roots(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    w: float,
    j_w: float = 0.0,
    samples: Optional[int] = None,
) -> list[float]:
    """Return roots of the unsquared optimality equation found by a sign
    scan over the feasible interval and `brentq` on every bracket."""
    _check_costate(j_w)
    plant = CruisePlant(fc, params, env)
    ci: float = cost.cost_index
    v_lo, v_hi = plant.speed_range(w)
    num: int = samples or PARAMS.solver.bracket_samples
    fractions: np.ndarray = np.concatenate(
        ([1e-9], np.linspace(0.0, 1.0, num)[1:-1], [1.0 - 1e-9])
    )
    grid: np.ndarray = v_lo + (v_hi - v_lo) * fractions
    values: list[float] = [plant.residual(v, w, j_w, ci) for v in grid]
    roots: list[float] = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
        elif values[i] * values[i + 1] < 0.0:
            roots.append(
                brentq(
                    plant.residual,
                    grid[i],
                    grid[i + 1],
                    args=(w, j_w, ci),
                    xtol=1e-13,
                )
            )
    return roots


def hamiltonian(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    v: float,
    w: float,
    j_x: float,
    j_w: float = 0.0,
) -> float:
    """Return `H = (1 + J_W) * Wdot + J_x * v + C_I` (N/s)."""
    plant = CruisePlant(fc, params, env)
    return (1.0 + j_w) * plant.weight_rate(v, w) + j_x * v + cost.cost_index


def hamiltonian_dv(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
    j_x: float,
    j_w: float = 0.0,
) -> float:
    plant = CruisePlant(fc, params, env)
    return (1.0 + j_w) * plant.weight_rate_dv(v, w) + j_x


def hamiltonian_dw(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
    j_w: float = 0.0,
) -> float:
    plant = CruisePlant(fc, params, env)
    return (1.0 + j_w) * plant.weight_rate_dw(v, w)


def costate_x(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
    j_w: float = 0.0,
) -> float:
    """Return the position costate that makes `dH/dv = 0` at `v`."""
    return -(1.0 + j_w) * CruisePlant(fc, params, env).weight_rate_dv(v, w)


def costate_rate(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    v: float,
    w: float,
    j_w: float = 0.0,
) -> float:
    """Return `dJ_W/dt` (1/s).

    The weight state is integrated downwards, `dW/dt = -Wdot`, so the
    costate equation is `dJ_W/dt = +dH/dW`. It keeps `H` constant along an
    extremal and gives `J_W <= 0` with `J_W(t_f) = 0`.
    """
    return hamiltonian_dw(fc, params, env, v, w, j_w)


class SpeedTracker:
    """Track the optimal speed along a trajectory.

    Each call runs Newton on the unsquared equation from the previous speed.
    A full polynomial solve runs on the first call, every `resolve_every`
    calls, and whenever Newton fails or leaves the feasible interval.
    """

    def __init__(
        self,
        plant: CruisePlant,
        cost_index: float,
        resolve_every: Optional[int] = None,
    ):
        self.plant = plant
        self.cost_index = cost_index
        self.resolve_every: int = (
            resolve_every or PARAMS.integrator.resolve_every
        )
        self.v: Optional[float] = None
        self.calls: int = 0
        self.full_solves: int = 0

    @classmethod
    def from_params(
        cls,
        fc: FuelCellParams,
        params: AircraftParams,
        env: Environment,
        cost: CostModel,
        resolve_every: Optional[int] = None,
    ) -> SpeedTracker:
        return cls(CruisePlant(fc, params, env), cost.cost_index, resolve_every)

    def _full_solve(self, w: float, j_w: float) -> float:
        self.full_solves += 1
        return _solve_speed(self.plant, self.cost_index, w, j_w).v_opt

    def speed(self, w: float, j_w: float = 0.0) -> float:
        periodic: bool = self.calls % self.resolve_every == 0
        self.calls += 1
        if self.v is None or periodic:
            self.v = self._full_solve(w, j_w)
            return self.v
        try:
            v: float = newton(
                self.plant.residual,
                self.v,
                fprime=self.plant.residual_dv,
                args=(w, j_w, self.cost_index),
                tol=PARAMS.solver.tracking_tolerance,
                maxiter=PARAMS.solver.newton_max_iter,
            )
        except (RuntimeError, ModelBaseError):
            logger.debug("Newton tracking failed at W={:.6g} N", w)
            v = self._full_solve(w, j_w)
        else:
            if not np.isfinite(v) or v <= 0.0:
                v = self._full_solve(w, j_w)
        self.v = float(v)
        return self.v


def hamiltonian_drift(
    plant: CruisePlant,
    ci: float,
    samples: list[CruiseState],
) -> tuple[float, float]:
    """Return `(J_x, drift)` where `J_x` is fixed at the first sample and
    the drift is `max |H(t)|` relative to `C_I + (1 + J_W) * Wdot` there."""
    first: CruiseState = samples[0]
    j_x: float = -(1.0 + first.j_w) * plant.weight_rate_dv(first.v, first.w)
    scale: float = ci + (1.0 + first.j_w) * plant.weight_rate(first.v, first.w)
    drift: float = max(
        abs((1.0 + s.j_w) * plant.weight_rate(s.v, s.w) + j_x * s.v + ci)
        for s in samples
    )
    return j_x, drift / scale


def solve_shooting(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    x_d: float,
    w0: float,
    tol: Optional[float] = None,
    *,
    steps: Optional[int] = None,
    max_iter: Optional[int] = None,
) -> ShootingResult:
    """Shoot on the initial weight costate so that `J_W(t_f) = 0`.

    Each shot integrates position, weight and `J_W` to `x = x_d` with the
    speed solved pointwise from the optimality equation at `(W, J_W)`. The
    initial costate is updated with a secant step from `0` and `-J_W(t_f)`.

    :raises ShootingNotConverged: after `max_iter` shots with the history of
        `(J_W(0), J_W(t_f))` pairs.
    """
    tol = tol or PARAMS.shooting.tolerance
    max_iter = max_iter or PARAMS.shooting.max_iter
    plant = CruisePlant(fc, params, env)
    ci: float = cost.cost_index
    v0: float = _solve_speed(plant, ci, w0).v_opt
    dt: float = (x_d / v0) / (steps or PARAMS.integrator.steps)

    def shoot(j_w0: float) -> CruiseRun:
        tracker = SpeedTracker(plant, ci)
        return integrate.run_cruise(
            plant,
            tracker.speed,
            x_d=x_d,
            w0=w0,
            dry_weight=params.dry_weight,
            dt=dt,
            j_w0=j_w0,
            optimal=True,
        )

    def finish(
        j_w0: float, run: CruiseRun, iterations: int
    ) -> ShootingResult:
        j_x, drift = hamiltonian_drift(plant, ci, run.samples)
        logger.info(
            "Shooting converged after {} shots: J_W(0)={:.6g}, J_W(t_f)={:.3g}, "
            "H drift={:.3g}",
            iterations,
            j_w0,
            run.j_w,
            drift,
        )
        return ShootingResult(
            j_w0=j_w0,
            trajectory=run.samples,
            terminal_jw=run.j_w,
            iterations=iterations,
            converged=True,
            j_x=j_x,
            hamiltonian_drift=drift,
            history=history,
            run=run,
        )

    history: list[tuple[float, float]] = []
    j_a: float = 0.0
    run_a: CruiseRun = shoot(j_a)
    history.append((j_a, run_a.j_w))
    if abs(run_a.j_w) < tol:
        return finish(j_a, run_a, 1)

    j_b: float = -run_a.j_w
    for iteration in range(2, max_iter + 1):
        run_b: CruiseRun = shoot(j_b)
        history.append((j_b, run_b.j_w))
        logger.debug(
            "Shot {}: J_W(0)={:.12g} -> J_W(t_f)={:.3g}",
            iteration,
            j_b,
            run_b.j_w,
        )
        if abs(run_b.j_w) < tol:
            return finish(j_b, run_b, iteration)
        if run_b.j_w == run_a.j_w:
            break
        j_next: float = j_b - run_b.j_w * (j_b - j_a) / (run_b.j_w - run_a.j_w)
        j_a, run_a, j_b = j_b, run_b, j_next

    raise ShootingNotConverged(
        history,
        f"terminal weight costate did not reach {tol:.3g} "
        f"after {len(history)} shots",
    )
