# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""SVG line charts of the sweep tables.

The charts mirror the CSV files and are rendered without a display. A fixed
hash salt and no date metadata keep repeated renders byte-identical.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from .constants import SECONDS_PER_MINUTE  # noqa: E402
from .errors import IOBaseError  # noqa: E402
from .utils import get_logger  # noqa: E402

__all__ = (
    "plot_velocity_vs_ci",
    "plot_pareto",
)

logger = get_logger(__name__)

plt.rcParams["svg.hashsalt"] = "h2cruise"
plt.rcParams["svg.fonttype"] = "none"


def _save(fig, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as err:
        raise IOBaseError(f"cannot write {path}: {err}") from err
    finally:
        plt.close(fig)
    logger.info("Wrote chart {}", path)
    return path


def _ok_rows(frame: pd.DataFrame) -> pd.DataFrame:
    return frame.dropna(subset=["v_kmh", "t_f_s", "fuel_kg"])


def plot_velocity_vs_ci(
    frame: pd.DataFrame, path: Union[str, Path]
) -> Path:
    data = _ok_rows(frame)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(data["cost_index"], data["v_kmh"], marker=".", linewidth=1.2)
    ax.set_xlabel("Cost index C_I (N/s)")
    ax.set_ylabel("Cruise speed (km/h)")
    ax.set_title("Velocity as a function of cost index")
    ax.grid(True, linewidth=0.4, alpha=0.6)
    fig.tight_layout()
    return _save(fig, path)


def plot_pareto(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    data = _ok_rows(frame)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(
        data["t_f_s"] / SECONDS_PER_MINUTE,
        data["fuel_kg"],
        marker=".",
        linewidth=1.2,
    )
    ax.set_xlabel("Flight time (min)")
    ax.set_ylabel("Hydrogen burned (kg)")
    ax.set_title("Flight time against fuel burned")
    ax.grid(True, linewidth=0.4, alpha=0.6)
    fig.tight_layout()
    return _save(fig, path)
