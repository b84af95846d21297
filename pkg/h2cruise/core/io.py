# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Union

import pandas as pd
from pydantic import ValidationError

from .constants import KMH_PER_MPS
from .errors import ConfigParseError, ConfigValidateError, WriteCSVError
from .models import CheckRow, CruiseState, SpeedSolution, SweepRow
from .utils import fmt_float, get_logger
from .validators import RunConfig

__all__ = (
    "SWEEP_COLUMNS",
    "TRAJECTORY_COLUMNS",
    "load_config",
    "sweep_frame",
    "trajectory_frame",
    "solution_frame",
    "checks_frame",
    "write_csv",
)

logger = get_logger(__name__)

SWEEP_COLUMNS: list[str] = [
    "cost_index",
    "v_mps",
    "v_kmh",
    "t_f_s",
    "fuel_kg",
    "doc",
]

TRAJECTORY_COLUMNS: list[str] = ["t_s", "x_m", "w_n", "v_mps", "v_kmh", "j_w"]


def _dotted(loc: tuple) -> str:
    return ".".join(str(part) for part in loc if part != "__root__")


def load_config(path: Union[str, Path]) -> RunConfig:
    """Load and validate a JSON run config.

    :raises ConfigParseError: with the line and column of a JSON syntax
        error or an unreadable file.
    :raises ConfigValidateError: naming the first failing field.
    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as err:
        raise ConfigParseError(str(path), 0, 0, "file does not exist") from err
    except json.JSONDecodeError as err:
        raise ConfigParseError(
            str(path), err.lineno, err.colno, err.msg
        ) from err

    if not isinstance(data, dict):
        raise ConfigValidateError("<root>", "the config must be a JSON object")
    try:
        config: RunConfig = RunConfig.parse_obj(data)
    except ValidationError as err:
        first: dict = err.errors()[0]
        raise ConfigValidateError(
            _dotted(first["loc"]) or "<root>", first["msg"]
        ) from err
    logger.debug("Loaded config {}", path)
    return config


def sweep_frame(
    rows: list[SweepRow],
    speed: Literal["initial", "average"] = "initial",
) -> pd.DataFrame:
    """Return the sweep table with the fixed column set, plus an `error`
    column only when a point failed."""
    records: list[dict] = []
    for row in rows:
        if row.ok:
            v: float = (
                row.v_initial if speed == "initial" else row.point.v_avg
            )
            records.append(
                {
                    "cost_index": row.cost_index,
                    "v_mps": v,
                    "v_kmh": v * KMH_PER_MPS,
                    "t_f_s": row.point.t_f,
                    "fuel_kg": row.point.fuel_burned,
                    "doc": row.doc,
                    "error": "",
                }
            )
        else:
            records.append({"cost_index": row.cost_index, "error": row.error})
    columns: list[str] = SWEEP_COLUMNS + (
        ["error"] if any(not row.ok for row in rows) else []
    )
    return pd.DataFrame(records).reindex(columns=columns)


def trajectory_frame(samples: list[CruiseState]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "t_s": [s.t for s in samples],
            "x_m": [s.x for s in samples],
            "w_n": [s.w for s in samples],
            "v_mps": [s.v for s in samples],
            "v_kmh": [s.v * KMH_PER_MPS for s in samples],
            "j_w": [s.j_w for s in samples],
        },
        columns=TRAJECTORY_COLUMNS,
    )


def solution_frame(
    cost_index: float, solution: SpeedSolution
) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [
            {
                "cost_index": cost_index,
                "v_mps": solution.v_opt,
                "v_kmh": solution.v_kmh,
                "residual": solution.residual,
                "j_w": solution.j_w,
                "j_x": solution.j_x,
                "hamiltonian": solution.hamiltonian_value,
                "real_roots": len(solution.all_real_roots),
                "rejected_roots": len(solution.rejected_roots),
            }
        ]
    )


def checks_frame(checks: list[CheckRow]) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [
            {
                "name": c.name,
                "status": c.status.value,
                "value": c.value,
                "detail": c.detail,
            }
            for c in checks
        ],
        columns=["name", "status", "value", "detail"],
    )


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a frame as UTF-8 CSV with LF line ends and 12 significant
    digits, so the same frame always gives the same bytes."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(
            path,
            index=False,
            float_format=fmt_float,
            lineterminator="\n",
            encoding="utf-8",
            na_rep="",
        )
    except OSError as err:
        raise WriteCSVError(f"cannot write {path}: {err}") from err
    logger.info("Wrote {} rows to {}", len(frame), path)
    return path
