# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Optional, Union

from more_itertools import pairwise

from . import integrate, optimizer
from .constants import KMH_PER_MPS, SECONDS_PER_MINUTE
from .errors import BaseError, SweepArgumentError
from .models import (
    CheckRow,
    CheckStatus,
    CruiseRun,
    MissionResult,
    Mode,
    ParetoPoint,
    ShootingResult,
    SweepRow,
    TradeoffReport,
)
from .plant import CruisePlant
from .utils import get_logger
from .validators import AircraftParams, CostModel, Environment, FuelCellParams

__all__ = (
    "simulate",
    "check_ci_grid",
    "sweep_cost_index",
    "tradeoff_report",
    "pareto_violations",
    "monotonicity_violations",
    "frontier_slopes",
)

logger = get_logger(__name__)

PARAMS = optimizer.PARAMS


def simulate(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    cost: CostModel,
    x_d: float,
    mode: Union[Mode, str] = Mode.SUBOPTIMAL,
    steps: Optional[int] = None,
) -> MissionResult:
    """Fly the cruise from `x = 0` to `x_d` and return time, fuel and DOC.

    In the suboptimal mode the speed is re-solved with `J_W = 0` at the
    current weight on every RK4 stage. In the optimal mode the trajectory of
    the converged shooting solution is used.

    :raises RangeExceededError: if the fuel runs out before `x_d`.
    """
    mode = Mode(mode)
    steps = steps or PARAMS.integrator.steps
    w0: float = params.initial_weight
    shooting: Optional[ShootingResult] = None
    if mode is Mode.OPTIMAL:
        shooting = optimizer.solve_shooting(
            fc, params, env, cost, x_d, w0, steps=steps
        )
        run: CruiseRun = shooting.run
    else:
        plant = CruisePlant(fc, params, env)
        tracker = optimizer.SpeedTracker(plant, cost.cost_index)
        v0: float = tracker.speed(w0)
        run = integrate.run_cruise(
            plant,
            tracker.speed,
            x_d=x_d,
            w0=w0,
            dry_weight=params.dry_weight,
            dt=(x_d / v0) / steps,
        )

    fuel_burned: float = w0 - run.w_f
    c_time, c_fuel = cost.doc_weights()
    result = MissionResult(
        t_f=run.t_f,
        fuel_burned_n=fuel_burned,
        doc=c_time * run.t_f + c_fuel * fuel_burned,
        samples=run.samples,
        mode=mode,
        x_d=x_d,
        charge=run.charge,
        electric_energy=run.electric_energy,
        propulsive_energy=run.propulsive_energy,
        gravity=env.gravity,
        shooting=shooting,
    )
    logger.info(
        "Mission {} at C_I={:.6g}: t_f={:.2f} min, fuel={:.4f} kg, "
        "v0={:.2f} km/h",
        mode.value,
        cost.cost_index,
        result.t_f / SECONDS_PER_MINUTE,
        result.fuel_burned_kg,
        result.v_initial * KMH_PER_MPS,
    )
    return result


def check_ci_grid(ci_grid: list[float]) -> list[float]:
    if not ci_grid:
        raise SweepArgumentError("cost-index grid must not be empty")
    if any(ci < 0 for ci in ci_grid):
        raise SweepArgumentError("cost-index grid values must be nonnegative")
    if any(b <= a for a, b in pairwise(ci_grid)):
        raise SweepArgumentError("cost-index grid must be strictly increasing")
    return list(ci_grid)


def _sweep_point(
    ci: float,
    *,
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    x_d: float,
    mode: Mode,
    steps: Optional[int],
) -> SweepRow:
    try:
        result: MissionResult = simulate(
            fc, params, env, CostModel(cost_index=ci), x_d, mode, steps
        )
    except BaseError as err:
        logger.warning("Sweep point C_I={:.6g} failed: {}", ci, err)
        return SweepRow(cost_index=ci, error=f"{type(err).__name__}: {err}")
    return SweepRow(
        cost_index=ci,
        v_initial=result.v_initial,
        point=ParetoPoint(
            cost_index=ci,
            v_avg=result.v_avg,
            t_f=result.t_f,
            fuel_burned=result.fuel_burned_kg,
        ),
        doc=result.doc,
    )


def sweep_cost_index(
    fc: FuelCellParams,
    params: AircraftParams,
    env: Environment,
    ci_grid: list[float],
    x_d: float,
    mode: Union[Mode, str] = Mode.SUBOPTIMAL,
    *,
    steps: Optional[int] = None,
    max_workers: int = 1,
) -> list[SweepRow]:
    """Run one mission per cost index and return the rows in grid order.

    A failing point is recorded with its error and the sweep continues.
    With `max_workers > 1` the points run in a process pool.
    """
    grid: list[float] = check_ci_grid(ci_grid)
    worker = partial(
        _sweep_point,
        fc=fc,
        params=params,
        env=env,
        x_d=x_d,
        mode=Mode(mode),
        steps=steps,
    )
    if max_workers <= 1 or len(grid) == 1:
        rows: list[SweepRow] = [worker(ci) for ci in grid]
    else:
        with ProcessPoolExecutor(max_workers=max_workers) as executor:
            rows = list(executor.map(worker, grid))
    failed: int = sum(not row.ok for row in rows)
    logger.info(
        "Swept {} cost indexes, {} failed", len(rows), failed
    )
    return rows


def pareto_violations(points: list[ParetoPoint]) -> list[tuple[int, int]]:
    """Return `(i, j)` index pairs where point `j` has both a strictly lower
    flight time and strictly lower fuel than point `i`."""
    return [
        (i, j)
        for i, p in enumerate(points)
        for j, q in enumerate(points)
        if q.t_f < p.t_f and q.fuel_burned < p.fuel_burned
    ]


def monotonicity_violations(points: list[ParetoPoint]) -> list[int]:
    """Return indexes `i` where the step to `i + 1` (by increasing cost
    index) does not decrease the flight time or does not increase the fuel."""
    ordered = sorted(points, key=lambda p: p.cost_index)
    return [
        i
        for i, (p, q) in enumerate(pairwise(ordered))
        if not (q.t_f < p.t_f and q.fuel_burned > p.fuel_burned)
    ]


def frontier_slopes(points: list[ParetoPoint]) -> list[float]:
    """Return `|d(fuel)/d(t_f)|` (kg/s) between consecutive points ordered by
    average speed."""
    ordered = sorted(points, key=lambda p: p.v_avg)
    return [
        abs((q.fuel_burned - p.fuel_burned) / (q.t_f - p.t_f))
        for p, q in pairwise(ordered)
        if q.t_f != p.t_f
    ]


def _first_at_or_above(rows: list[SweepRow], v: float) -> Optional[SweepRow]:
    return next((row for row in rows if row.v_initial >= v), None)


def tradeoff_report(
    rows: list[SweepRow],
    x_d: float,
    v_from: Optional[float] = None,
    v_to: Optional[float] = None,
) -> TradeoffReport:
    """Compare the sweep points where the initial speed first reaches
    `v_from` and `v_to` (m/s) with the reference time saving and fuel
    increase for that speed change."""
    reference = PARAMS.tradeoff_reference
    v_from = v_from or reference.v_from_kmh / KMH_PER_MPS
    v_to = v_to or reference.v_to_kmh / KMH_PER_MPS
    ok_rows: list[SweepRow] = sorted(
        (row for row in rows if row.ok), key=lambda row: row.cost_index
    )
    row_from = _first_at_or_above(ok_rows, v_from)
    row_to = _first_at_or_above(ok_rows, v_to)
    checks: list[CheckRow] = []

    consistent: bool = True
    tolerance: float = PARAMS.checks.consistency_tolerance
    for label, row in (("from", row_from), ("to", row_to)):
        if row is None:
            consistent = False
            checks.append(
                CheckRow(
                    name=f"speed {label}",
                    status=CheckStatus.FLAG,
                    value="",
                    detail="speed not reached by the cost-index grid",
                )
            )
            continue
        expected: float = x_d / row.point.v_avg
        error: float = abs(row.point.t_f - expected) / row.point.t_f
        passed: bool = error <= tolerance
        consistent &= passed
        checks.append(
            CheckRow(
                name=f"t_f = x_d / v_avg at C_I={row.cost_index:.6g}",
                status=CheckStatus.PASS if passed else CheckStatus.FAIL,
                value=f"{error:.3e}",
                detail=f"relative error, tolerance {tolerance:g}",
            )
        )

    delta_t_f: Optional[float] = None
    delta_fuel: Optional[float] = None
    if row_from is not None and row_to is not None:
        delta_t_f = row_from.point.t_f - row_to.point.t_f
        delta_fuel = row_to.point.fuel_burned - row_from.point.fuel_burned
        saving_min: float = delta_t_f / SECONDS_PER_MINUTE
        checks.append(
            CheckRow(
                name="time saving",
                status=(
                    CheckStatus.PASS
                    if saving_min >= reference.time_saving_min
                    else CheckStatus.FLAG
                ),
                value=f"{saving_min:.2f} min",
                detail=f"reference roughly {reference.time_saving_min:g} min",
            )
        )
        checks.append(
            CheckRow(
                name="fuel increase",
                status=(
                    CheckStatus.PASS
                    if delta_fuel < reference.fuel_increase_max_kg
                    else CheckStatus.FLAG
                ),
                value=f"{delta_fuel:.4f} kg",
                detail=(
                    f"reference less than "
                    f"{reference.fuel_increase_max_kg:g} kg"
                ),
            )
        )

    return TradeoffReport(
        v_from=v_from,
        v_to=v_to,
        row_from=row_from,
        row_to=row_to,
        delta_t_f=delta_t_f,
        delta_fuel=delta_fuel,
        reference_time_saving=reference.time_saving_min * SECONDS_PER_MINUTE,
        reference_fuel_increase=reference.fuel_increase_max_kg,
        consistent=consistent,
        checks=checks,
    )
