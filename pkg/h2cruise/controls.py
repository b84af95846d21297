# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Optional, Union

import click
import numpy as np

from h2cruise.core import fuelcell, mission, optimizer
from h2cruise.core.constants import KMH_PER_MPS, SECONDS_PER_MINUTE
from h2cruise.core.errors import (
    BaseError,
    ConfigBaseError,
    ConfigParseError,
    ConfigValidateError,
    IOBaseError,
    ModelBaseError,
    NoSolutionError,
    PowerInfeasibleError,
    RangeExceededError,
    ShootingNotConverged,
    SweepArgumentError,
)
from h2cruise.core.io import (
    checks_frame,
    load_config,
    solution_frame,
    sweep_frame,
    trajectory_frame,
    write_csv,
)
from h2cruise.core.models import (
    CheckRow,
    CheckStatus,
    ExitCode,
    MissionResult,
    Mode,
    SpeedSolution,
    SweepRow,
    TradeoffReport,
)
from h2cruise.core.plant import CruisePlant
from h2cruise.core.utils import get_logger
from h2cruise.core.validators import CostModel, Environment, RunConfig

logger = get_logger(__name__)

# Ordered from the most specific class, the first match wins.
ERROR_EXIT_CODES: list[tuple[type[BaseError], ExitCode]] = [
    (NoSolutionError, ExitCode.NO_SOLUTION),
    (ShootingNotConverged, ExitCode.NOT_CONVERGED),
    (PowerInfeasibleError, ExitCode.INFEASIBLE),
    (RangeExceededError, ExitCode.RANGE_EXCEEDED),
    (SweepArgumentError, ExitCode.CONFIG),
    (ConfigBaseError, ExitCode.CONFIG),
    (IOBaseError, ExitCode.IO),
    (ModelBaseError, ExitCode.DOMAIN),
]


def exit_code_for(err: BaseError) -> ExitCode:
    for error_cls, code in ERROR_EXIT_CODES:
        if isinstance(err, error_cls):
            return code
    return ExitCode.DOMAIN


def error_payload(err: BaseError) -> dict[str, Any]:
    """Return the machine-readable error record written on stderr."""
    payload: dict[str, Any] = {
        "error": type(err).__name__,
        "code": int(exit_code_for(err)),
        "message": str(err),
    }
    if isinstance(err, PowerInfeasibleError):
        payload["feasibility"] = {
            "max_net_power": err.feasibility.max_net_power,
            "requested_power": err.feasibility.requested_power,
            "feasible": err.feasibility.feasible,
        }
    elif isinstance(err, NoSolutionError):
        payload["rejected_roots"] = [
            {"speed": r.speed, "reason": r.reason.value} for r in err.rejected
        ]
    elif isinstance(err, ShootingNotConverged):
        payload["history"] = [list(pair) for pair in err.history]
    elif isinstance(err, ConfigParseError):
        payload["line"] = err.line
        payload["column"] = err.column
    elif isinstance(err, ConfigValidateError):
        payload["field"] = err.field
    return payload


def run_command(func: Callable[..., ExitCode], *args, **kwargs) -> int:
    """Run a command body and turn a package error into its exit code and
    one JSON line on stderr."""
    try:
        return int(func(*args, **kwargs))
    except BaseError as err:
        logger.debug("Command {} failed: {!r}", func.__name__, err)
        click.echo(json.dumps(error_payload(err)), err=True)
        return int(exit_code_for(err))


def output_dir(config: RunConfig, out: Optional[Union[str, Path]]) -> Path:
    """Resolve the output directory from `--out`, then the config, then the
    `H2CRUISE_OUTPUT` setting."""
    from conf import settings

    return Path(out or config.output.directory or settings.OUTPUT_DIR)


def _echo_checks(checks: list[CheckRow]) -> None:
    for check in checks:
        click.echo(
            f"{check.status.value:<5} {check.name:<44} {check.value:>18}  "
            f"{check.detail}"
        )


def _echo_solution(cost_index: float, solution: SpeedSolution) -> None:
    click.echo(f"cost index        : {cost_index:.6g} N/s")
    click.echo(
        f"optimal speed     : {solution.v_opt:.9g} m/s "
        f"({solution.v_kmh:.6g} km/h)"
    )
    click.echo(f"residual          : {solution.residual:.3e} N/s")
    click.echo(f"J_W / J_x         : {solution.j_w:.6g} / {solution.j_x:.6g}")
    click.echo(f"hamiltonian       : {solution.hamiltonian_value:.3e} N/s")
    click.echo(
        "real roots (m/s)  : "
        + ", ".join(f"{v:.6g}" for v in solution.all_real_roots)
    )
    for rejected in solution.rejected_roots:
        click.echo(
            f"  rejected {rejected.speed:.6g} m/s: {rejected.reason.value}"
        )


def cmd_solve(
    config_path: Union[str, Path],
    cost_index: Optional[float] = None,
    out: Optional[Union[str, Path]] = None,
) -> ExitCode:
    """Solve the suboptimal cruise speed at the initial weight."""
    config: RunConfig = load_config(config_path)
    env = config.build_environment()
    cost: CostModel = config.build_cost(cost_index)
    solution: SpeedSolution = optimizer.solve_speed(
        config.fuelcell,
        config.aircraft,
        env,
        cost,
        config.aircraft.initial_weight,
    )
    _echo_solution(cost.cost_index, solution)
    if out is not None:
        write_csv(
            solution_frame(cost.cost_index, solution),
            Path(out) / "solve.csv",
        )
    return ExitCode.SUCCESS


def _echo_mission(result: MissionResult, n_cells: int) -> None:
    click.echo(f"mode              : {result.mode.value}")
    click.echo(f"range             : {result.x_d / 1000.0:.6g} km")
    click.echo(
        f"flight time       : {result.t_f:.6g} s "
        f"({result.t_f / SECONDS_PER_MINUTE:.4f} min)"
    )
    click.echo(
        f"initial speed     : {result.v_initial * KMH_PER_MPS:.6g} km/h, "
        f"average {result.v_avg * KMH_PER_MPS:.6g} km/h"
    )
    click.echo(
        f"fuel burned       : {result.fuel_burned_kg:.6g} kg "
        f"({result.fuel_burned_n:.6g} N)"
    )
    click.echo(f"direct op. cost   : {result.doc:.6g}")
    click.echo(
        f"energy balance    : {result.electric_energy:.9g} J electric, "
        f"{result.propulsive_energy:.9g} J propulsive"
    )
    click.echo(f"charge per cell   : {result.charge:.9g} C ({n_cells} cells)")
    if result.shooting is not None:
        shooting = result.shooting
        click.echo(
            f"shooting          : J_W(0) = {shooting.j_w0:.6g}, "
            f"J_W(t_f) = {shooting.terminal_jw:.3e}, "
            f"{shooting.iterations} shots"
        )
        click.echo(
            f"hamiltonian drift : {shooting.hamiltonian_drift:.3e} "
            f"(J_x = {shooting.j_x:.6g})"
        )


def cmd_simulate(
    config_path: Union[str, Path],
    cost_index: Optional[float] = None,
    mode: Optional[Union[Mode, str]] = None,
    out: Optional[Union[str, Path]] = None,
) -> ExitCode:
    """Fly the mission of the config and write its trajectory."""
    config: RunConfig = load_config(config_path)
    env = config.build_environment()
    cost: CostModel = config.build_cost(cost_index)
    result: MissionResult = mission.simulate(
        config.fuelcell,
        config.aircraft,
        env,
        cost,
        config.mission.x_d,
        mode or config.mission.mode,
        steps=config.mission.steps,
    )
    _echo_mission(result, config.fuelcell.n_cells)
    if "csv" in config.output.formats:
        write_csv(
            trajectory_frame(
                result.decimated(optimizer.PARAMS.integrator.max_rows)
            ),
            output_dir(config, out) / f"trajectory_{result.mode.value}.csv",
        )
    return ExitCode.SUCCESS


def _echo_tradeoff(report: TradeoffReport) -> None:
    click.echo(
        f"trade-off {report.v_from * KMH_PER_MPS:.0f} -> "
        f"{report.v_to * KMH_PER_MPS:.0f} km/h:"
    )
    if report.delta_t_f is not None:
        click.echo(
            f"  time saving   : {report.delta_t_f / SECONDS_PER_MINUTE:.2f} "
            f"min (reference roughly "
            f"{report.reference_time_saving / SECONDS_PER_MINUTE:g} min)"
        )
        click.echo(
            f"  fuel increase : {report.delta_fuel:.4f} kg (reference less "
            f"than {report.reference_fuel_increase:g} kg)"
        )
    click.echo(f"  consistent    : {report.consistent}")
    _echo_checks(report.checks)


def frontier_checks(rows: list[SweepRow]) -> list[CheckRow]:
    """Frontier checks over the successful points of a sweep."""
    points = [row.point for row in rows if row.ok]
    dominated = mission.pareto_violations(points)
    not_monotone = mission.monotonicity_violations(points)
    slopes: list[float] = mission.frontier_slopes(points)
    steepening: bool = all(b >= a for a, b in zip(slopes, slopes[1:]))
    return [
        CheckRow(
            name="no dominated points",
            status=CheckStatus.PASS if not dominated else CheckStatus.FAIL,
            value=str(len(dominated)),
            detail="dominated pairs",
        ),
        CheckRow(
            name="t_f decreasing and fuel increasing",
            status=CheckStatus.PASS if not not_monotone else CheckStatus.FAIL,
            value=str(len(not_monotone)),
            detail="violating steps",
        ),
        CheckRow(
            name="frontier steepens with speed",
            status=CheckStatus.PASS if steepening else CheckStatus.FLAG,
            value=(f"{slopes[0]:.3e}..{slopes[-1]:.3e}" if slopes else ""),
            detail="|d fuel / d t_f| in kg/s",
        ),
    ]


def _sweep(
    config_path: Union[str, Path],
    out: Optional[Union[str, Path]],
    velocity: bool,
) -> ExitCode:
    from conf import settings

    config: RunConfig = load_config(config_path)
    grid: list[float] = config.require_grid()
    env = config.build_environment()
    rows: list[SweepRow] = mission.sweep_cost_index(
        config.fuelcell,
        config.aircraft,
        env,
        grid,
        config.mission.x_d,
        config.mission.mode,
        steps=config.mission.steps,
        max_workers=settings.SWEEP_MAX_WORKERS,
    )
    directory: Path = output_dir(config, out)
    formats: list[str] = config.output.formats
    pareto = sweep_frame(rows, speed="average")
    if "csv" in formats:
        write_csv(pareto, directory / "pareto.csv")
    if "svg" in formats:
        from h2cruise.core.plots import plot_pareto, plot_velocity_vs_ci

        plot_pareto(pareto, directory / "pareto.svg")
    if velocity:
        velocity_frame = sweep_frame(rows, speed="initial")
        if "csv" in formats:
            write_csv(velocity_frame, directory / "velocity_vs_ci.csv")
        if "svg" in formats:
            plot_velocity_vs_ci(velocity_frame, directory / "velocity_vs_ci.svg")

    for row in rows:
        if row.ok:
            click.echo(
                f"C_I={row.cost_index:<12.6g} v0={row.v_initial * KMH_PER_MPS:8.3f} "
                f"km/h  t_f={row.point.t_f / SECONDS_PER_MINUTE:8.3f} min  "
                f"fuel={row.point.fuel_burned:8.5f} kg"
            )
        else:
            click.echo(f"C_I={row.cost_index:<12.6g} FAILED {row.error}")

    report: TradeoffReport = mission.tradeoff_report(rows, config.mission.x_d)
    _echo_tradeoff(report)
    checks: list[CheckRow] = frontier_checks(rows)
    _echo_checks(checks)
    if "csv" in formats:
        write_csv(
            checks_frame(report.checks + checks), directory / "tradeoff.csv"
        )
    if any(not row.ok for row in rows):
        return ExitCode.PARTIAL
    return ExitCode.SUCCESS


def cmd_sweep(
    config_path: Union[str, Path], out: Optional[Union[str, Path]] = None
) -> ExitCode:
    """Sweep the cost-index grid and write both curve datasets."""
    return _sweep(config_path, out, velocity=True)


def cmd_pareto(
    config_path: Union[str, Path], out: Optional[Union[str, Path]] = None
) -> ExitCode:
    """Sweep the cost-index grid and write the time against fuel curve."""
    return _sweep(config_path, out, velocity=False)


def validation_checks(config: RunConfig) -> list[CheckRow]:
    """Return the feasibility and model-assumption report of a config."""
    params = optimizer.PARAMS.checks
    fc = config.fuelcell
    aircraft = config.aircraft
    env = config.build_environment()
    w0: float = aircraft.initial_weight
    v_cruise: float = config.mission.cruise_speed
    plant = CruisePlant(fc, aircraft, env)
    checks: list[CheckRow] = [
        CheckRow(
            name="max net power",
            status=CheckStatus.INFO,
            value=f"{fuelcell.max_net_power(fc):.6g} W",
            detail="E_oc^2 * eta * n / (4 r)",
        )
    ]

    cruise = fuelcell.feasibility(fc, aircraft, env, v_cruise, w0)
    checks.append(
        CheckRow(
            name=f"power envelope at {v_cruise * KMH_PER_MPS:.4g} km/h",
            status=CheckStatus.PASS if cruise.feasible else CheckStatus.FAIL,
            value=f"{cruise.requested_power:.6g} W",
            detail=f"margin {cruise.margin:+.3%}",
        )
    )
    for v in np.linspace(
        params.speed_table_min, params.speed_table_max, params.speed_table_num
    ):
        point = fuelcell.feasibility(fc, aircraft, env, float(v), w0)
        checks.append(
            CheckRow(
                name=f"required power at {v * KMH_PER_MPS:.4g} km/h",
                status=CheckStatus.INFO,
                value=f"{point.requested_power:.6g} W",
                detail="feasible" if point.feasible else "beyond envelope",
            )
        )

    if cruise.feasible:
        current: float = fuelcell.stack_current(fc, cruise.requested_power)
        ratio: float = fuelcell.ohmic_ratio(fc, current)
        checks.append(
            CheckRow(
                name="ohmic ratio I*r/U_c at cruise",
                status=(
                    CheckStatus.PASS
                    if ratio < params.ohmic_ratio_max
                    else CheckStatus.FAIL
                ),
                value=f"{ratio:.4f}",
                detail=f"limit {params.ohmic_ratio_max:g}, I = {current:.4g} A",
            )
        )
        margin: float = (
            fuelcell.discriminant(fc, cruise.requested_power)
            / fc.open_circuit_voltage**2
        )
        checks.append(
            CheckRow(
                name="discriminant margin at cruise",
                status=CheckStatus.PASS if margin > 0 else CheckStatus.FAIL,
                value=f"{margin:.4f}",
                detail="X^2 / E_oc^2",
            )
        )
    else:
        checks.append(
            CheckRow(
                name="ohmic ratio I*r/U_c at cruise",
                status=CheckStatus.FAIL,
                value="",
                detail="no stack current at the cruise speed",
            )
        )

    try:
        v_lo, v_hi = plant.speed_range(w0)
    except PowerInfeasibleError as err:
        checks.append(
            CheckRow(
                name="feasible speed range at W0",
                status=CheckStatus.FAIL,
                value="",
                detail=str(err),
            )
        )
    else:
        checks.append(
            CheckRow(
                name="feasible speed range at W0",
                status=CheckStatus.PASS,
                value=(
                    f"{v_lo * KMH_PER_MPS:.4g}..{v_hi * KMH_PER_MPS:.4g} km/h"
                ),
            )
        )
        checks.append(_solver_agreement(config, env))

    checks.extend(
        CheckRow(
            name=f"estimate {key}",
            status=CheckStatus.INFO,
            value="",
            detail="external estimate, not a tabulated value",
        )
        for key in config.estimates
    )
    return checks


def _solver_agreement(config: RunConfig, env: Environment) -> CheckRow:
    cost: CostModel = (
        config.build_cost()
        if config.cost is not None
        else CostModel(cost_index=0.0)
    )
    name: str = f"polynomial vs bracketed root at C_I={cost.cost_index:.4g}"
    try:
        solution = optimizer.solve_speed(
            config.fuelcell,
            config.aircraft,
            env,
            cost,
            config.aircraft.initial_weight,
        )
        roots = optimizer.bracket_speed_roots(
            config.fuelcell,
            config.aircraft,
            env,
            cost,
            config.aircraft.initial_weight,
        )
    except BaseError as err:
        return CheckRow(
            name=name, status=CheckStatus.FAIL, value="", detail=str(err)
        )
    gap: float = min((abs(r - solution.v_opt) for r in roots), default=np.inf)
    return CheckRow(
        name=name,
        status=CheckStatus.PASS if gap < 1e-9 else CheckStatus.FAIL,
        value=f"{gap:.3e} m/s",
        detail=f"v* = {solution.v_kmh:.6g} km/h",
    )


def cmd_validate(
    config_path: Union[str, Path], out: Optional[Union[str, Path]] = None
) -> ExitCode:
    """Print the feasibility report, failing when any check fails."""
    config: RunConfig = load_config(config_path)
    checks: list[CheckRow] = validation_checks(config)
    _echo_checks(checks)
    if out is not None:
        write_csv(checks_frame(checks), Path(out) / "validate.csv")
    if any(check.status is CheckStatus.FAIL for check in checks):
        return ExitCode.CHECK_FAILED
    return ExitCode.SUCCESS
