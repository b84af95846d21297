# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

from dataclasses import (
    dataclass,
    field,
)
from enum import (
    Enum,
    IntEnum,
)
from typing import Optional

from scipy.integrate import trapezoid

from .constants import KMH_PER_MPS, STANDARD_GRAVITY
from .utils.reusables import thin


class Mode(str, Enum):
    """Mission solver mode."""

    SUBOPTIMAL = "suboptimal"
    OPTIMAL = "optimal"


class CostBasis(str, Enum):
    """What the fuel term of the direct operating cost is priced on."""

    HYDROGEN = "hydrogen"
    CHARGE = "charge"


class RejectReason(str, Enum):
    NEGATIVE = "negative"
    DISCRIMINANT = "discriminant-violating"
    SPURIOUS = "spurious-from-squaring"
    NOT_MINIMUM = "not-a-minimum"


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    FLAG = "FLAG"
    INFO = "INFO"


class ExitCode(IntEnum):
    SUCCESS = 0
    PARTIAL = 1
    NO_SOLUTION = 2
    INFEASIBLE = 3
    CONFIG = 4
    RANGE_EXCEEDED = 5
    NOT_CONVERGED = 6
    CHECK_FAILED = 7
    IO = 8
    DOMAIN = 9


@dataclass(frozen=True)
class PowerFeasibility:
    max_net_power: float
    requested_power: float
    feasible: bool

    @property
    def margin(self) -> float:
        """Unused fraction of the stack envelope, negative when infeasible."""
        return 1.0 - self.requested_power / self.max_net_power


@dataclass(frozen=True)
class OperatingPoint:
    """Steady-cruise operating point of the power chain at one (v, W)."""

    v: float
    w: float
    drag: float
    power: float
    current: float
    cell_voltage: float
    weight_rate: float


@dataclass(frozen=True)
class RejectedRoot:
    speed: float
    reason: RejectReason


@dataclass
class SpeedSolution:
    v_opt: float
    residual: float
    all_real_roots: list[float]
    rejected_roots: list[RejectedRoot]
    j_w: float
    j_x: float
    hamiltonian_value: float

    @property
    def v_kmh(self) -> float:
        return self.v_opt * KMH_PER_MPS


@dataclass(frozen=True)
class CruiseState:
    t: float
    x: float
    w: float
    v: float
    j_w: float


@dataclass
class CruiseRun:
    """Integrated cruise to the destination with the running integrals used
    by the conservation checks."""

    samples: list[CruiseState]
    t_f: float
    w_f: float
    j_w: float
    charge: float
    electric_energy: float
    propulsive_energy: float
    steps: int


@dataclass
class ShootingResult:
    j_w0: float
    trajectory: list[CruiseState]
    terminal_jw: float
    iterations: int
    converged: bool
    j_x: float = 0.0
    hamiltonian_drift: float = 0.0
    history: list[tuple[float, float]] = field(default_factory=list)
    run: Optional[CruiseRun] = field(default=None, repr=False)


@dataclass
class MissionResult:
    t_f: float
    fuel_burned_n: float
    doc: float
    samples: list[CruiseState]
    mode: Mode
    x_d: float
    charge: float = 0.0
    electric_energy: float = 0.0
    propulsive_energy: float = 0.0
    gravity: float = STANDARD_GRAVITY
    shooting: Optional[ShootingResult] = None

    @property
    def fuel_burned_kg(self) -> float:
        return self.fuel_burned_n / self.gravity

    @property
    def v_initial(self) -> float:
        return self.samples[0].v

    @property
    def v_avg(self) -> float:
        """Time-averaged speed of the trajectory samples."""
        return (
            trapezoid([s.v for s in self.samples], [s.t for s in self.samples])
            / self.t_f
        )

    def decimated(self, max_rows: int = 2000) -> list[CruiseState]:
        return thin(self.samples, max_rows)


@dataclass(frozen=True)
class ParetoPoint:
    cost_index: float
    v_avg: float
    t_f: float
    fuel_burned: float


@dataclass
class SweepRow:
    cost_index: float
    v_initial: Optional[float] = None
    point: Optional[ParetoPoint] = None
    doc: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class CheckRow:
    name: str
    status: CheckStatus
    value: str
    detail: str = ""


@dataclass
class TradeoffReport:
    """Time and fuel change between the sweep points that bracket two
    speeds, next to the reference figures they are compared with."""

    v_from: float
    v_to: float
    row_from: Optional[SweepRow]
    row_to: Optional[SweepRow]
    delta_t_f: Optional[float]
    delta_fuel: Optional[float]
    reference_time_saving: float
    reference_fuel_increase: float
    consistent: bool
    checks: list[CheckRow] = field(default_factory=list)
