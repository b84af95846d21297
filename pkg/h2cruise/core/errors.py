# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .models import PowerFeasibility, RejectedRoot


class BaseError(Exception):
    """Base Exception class."""


class ModelBaseError(BaseError):
    """Physical Model Base Exception."""


class AtmosphereRangeError(ModelBaseError):
    """Exception raised for an altitude outside the troposphere model."""


class ModelDomainError(ModelBaseError):
    """Exception raised for an argument outside the domain of a model
    equation, like a non-positive speed or a negative hydrogen mass."""


class PowerInfeasibleError(ModelBaseError):
    """Exception raised when the requested net power exceeds what the stack
    can deliver, so the current root is complex."""

    def __init__(
        self,
        feasibility: PowerFeasibility,
        message: Optional[str] = None,
    ):
        self.feasibility = feasibility
        super().__init__(
            message
            or (
                f"requested net power {feasibility.requested_power:.6g} W "
                f"exceeds the stack envelope "
                f"{feasibility.max_net_power:.6g} W"
            )
        )


class SolverBaseError(BaseError):
    """Solver Base Exception."""


class NoSolutionError(SolverBaseError):
    """Exception raised when no root of the optimality equation is
    admissible."""

    def __init__(self, rejected: list[RejectedRoot], message: str):
        self.rejected = rejected
        _reasons: str = ", ".join(
            f"{r.speed:.6g} m/s ({r.reason.value})" for r in rejected
        )
        super().__init__(f"{message}; rejected roots: [{_reasons}]")


class ShootingNotConverged(SolverBaseError):
    """Exception raised when the secant iteration on the initial weight
    costate does not meet the terminal condition."""

    def __init__(self, history: list[tuple[float, float]], message: str):
        self.history = history
        _hist: str = ", ".join(f"({j:.6g}, {f:.3g})" for j, f in history[-5:])
        super().__init__(f"{message}; last (J_W(0), J_W(t_f)): {_hist}")


class MissionBaseError(BaseError):
    """Mission Base Exception."""


class RangeExceededError(MissionBaseError):
    """Exception raised when the weight reaches the dry-weight floor before
    the destination."""


class SweepArgumentError(MissionBaseError):
    """Exception raised for errors in the cost-index grid of a sweep."""


class ConfigBaseError(BaseError):
    """Config Base Exception."""


class ConfigParseError(ConfigBaseError):
    """Exception raised when the config file is not valid JSON."""

    def __init__(self, path: str, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {message}")


class ConfigValidateError(ConfigBaseError):
    """Exception raised for errors in values of the config file."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"Please check config key `{field}` because {message}")


class IOBaseError(BaseError):
    """I/O Base Exception."""


class WriteCSVError(IOBaseError):
    """Exception raised for errors in writing csv file engine."""
