# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

import math
from typing import (
    Literal,
    Optional,
)

import numpy as np
from pydantic import (
    BaseModel,
    Extra,
    ValidationError,
    Field,
    root_validator,
    validator,
)
from typing_extensions import Self

from .atmosphere import density_at
from .constants import (
    FARADAY,
    KMH_PER_MPS,
    MOLAR_MASS_H2,
    STANDARD_GRAVITY,
)
from .errors import AtmosphereRangeError, ConfigValidateError
from .models import CostBasis, Mode

__all__ = (
    "BaseParamsModel",
    "Environment",
    "AircraftParams",
    "FuelCellParams",
    "CostModel",
    "EnvironmentConfig",
    "CostConfig",
    "CiRange",
    "MissionConfig",
    "OutputConfig",
    "RunConfig",
)


class BaseParamsModel(BaseModel):
    """Base Model for immutable parameter records that reject unknown keys."""

    @classmethod
    def parse(cls, obj) -> Self:
        return cls.parse_obj(obj)

    def update(self, data: dict) -> Self:
        """Return a validated copy of this model with some values replaced."""
        return self.__class__.parse_obj(self.dict() | data)

    class Config:
        allow_mutation = False
        extra = Extra.forbid
        validate_all = True


class Environment(BaseParamsModel):
    """Atmospheric condition at the constant cruise altitude."""

    altitude_m: Optional[float] = Field(
        default=None, ge=0, description="Cruise altitude (m)"
    )
    air_density: float = Field(..., gt=0, description="Air density (kg/m3)")
    gravity: float = Field(
        default=STANDARD_GRAVITY,
        gt=0,
        description="Gravitational acceleration (m/s2)",
    )

    @classmethod
    def at_altitude(
        cls,
        altitude_m: float,
        gravity: float = STANDARD_GRAVITY,
    ) -> Self:
        return cls(
            altitude_m=altitude_m,
            air_density=density_at(altitude_m),
            gravity=gravity,
        )


class AircraftParams(BaseParamsModel):
    """Airframe constants of the drag polar and the weights."""

    wing_area: float = Field(..., gt=0, description="Wing area S (m2)")
    cd0: float = Field(..., gt=0, description="Zero-lift drag coefficient")
    k_induced: float = Field(..., gt=0, description="Induced drag constant K")
    initial_weight: float = Field(..., gt=0, description="Weight W0 (N)")
    fuel_weight: float = Field(..., gt=0, description="Hydrogen weight (N)")

    @root_validator(skip_on_failure=True)
    def check_fuel_weight(cls, values):
        if values["fuel_weight"] >= values["initial_weight"]:
            raise ValueError(
                "fuel_weight must be less than initial_weight, "
                f"got {values['fuel_weight']} >= {values['initial_weight']}"
            )
        return values

    @property
    def dry_weight(self) -> float:
        return self.initial_weight - self.fuel_weight


class FuelCellParams(BaseParamsModel):
    """Fuel-cell stack constants of the affine (ohmic) cell model."""

    n_cells: int = Field(..., ge=1, description="Cells in series")
    internal_resistance: float = Field(
        ..., gt=0, description="Ohmic resistance per cell (Ohm)"
    )
    open_circuit_voltage: float = Field(
        ..., gt=0, description="Open-circuit voltage per cell (V)"
    )
    efficiency: float = Field(
        ..., gt=0, le=1, description="Total system efficiency"
    )
    molar_mass_h2: float = Field(
        default=MOLAR_MASS_H2, gt=0, description="Molar mass of H2 (kg/mol)"
    )
    faraday: float = Field(
        default=FARADAY, gt=0, description="Faraday constant (C/mol)"
    )


class CostModel(BaseParamsModel):
    """Trade-off between time-related cost and fuel cost.

    The cost index is `c_time / c_fuel`. When only the cost index is known,
    the direct operating cost is reported with `(c_time, c_fuel) = (C_I, 1)`.
    """

    cost_index: Optional[float] = Field(
        default=None, ge=0, description="C_I = C_t / C_H (N/s)"
    )
    c_time: Optional[float] = Field(
        default=None, ge=0, description="Time-related cost per second"
    )
    c_fuel: Optional[float] = Field(
        default=None, gt=0, description="Fuel cost per newton of hydrogen"
    )
    basis: CostBasis = CostBasis.HYDROGEN

    @root_validator(skip_on_failure=True)
    def check_cost_index(cls, values):
        ci = values.get("cost_index")
        c_time, c_fuel = values.get("c_time"), values.get("c_fuel")
        if (c_time is None) != (c_fuel is None):
            raise ValueError("c_time and c_fuel must be given together")
        if c_time is not None:
            derived: float = c_time / c_fuel
            if ci is not None and not math.isclose(
                ci, derived, rel_tol=1e-9, abs_tol=1e-15
            ):
                raise ValueError(
                    f"cost_index {ci} does not equal c_time / c_fuel "
                    f"= {derived}"
                )
            values["cost_index"] = derived
        elif ci is None:
            raise ValueError("cost_index or the pair c_time/c_fuel is required")
        return values

    @classmethod
    def from_charge_cost(
        cls,
        c_time: float,
        c_charge: float,
        fc: FuelCellParams,
        env: Environment,
    ) -> Self:
        """Price the fuel term on drawn stack charge (per coulomb).

        The charge drawn per newton of hydrogen consumed is
        `2F / (n * M_H * g)`, so the equivalent cost per newton follows.
        """
        c_fuel: float = (
            c_charge * 2.0 * fc.faraday
            / (fc.n_cells * fc.molar_mass_h2 * env.gravity)
        )
        return cls(c_time=c_time, c_fuel=c_fuel, basis=CostBasis.CHARGE)

    def doc_weights(self) -> tuple[float, float]:
        """Return `(C_t, C_H)` used for the direct operating cost."""
        if self.c_time is not None:
            return self.c_time, self.c_fuel
        return self.cost_index, 1.0

    def scaled(self, factor: float) -> Self:
        c_time, c_fuel = self.doc_weights()
        return self.__class__(
            c_time=c_time * factor, c_fuel=c_fuel * factor, basis=self.basis
        )


class EnvironmentConfig(BaseParamsModel):
    """Environment section of a run config; exactly one of altitude or
    density."""

    altitude_m: Optional[float] = Field(default=None, ge=0)
    air_density: Optional[float] = Field(default=None, gt=0)
    gravity: float = Field(default=STANDARD_GRAVITY, gt=0)

    @root_validator(skip_on_failure=True)
    def check_exclusive(cls, values):
        has_alt: bool = values.get("altitude_m") is not None
        has_rho: bool = values.get("air_density") is not None
        if has_alt == has_rho:
            raise ValueError(
                "exactly one of altitude_m or air_density must be given"
            )
        if has_alt:
            try:
                density_at(values["altitude_m"])
            except AtmosphereRangeError as err:
                raise ValueError(str(err)) from err
        return values

    def to_environment(self) -> Environment:
        if self.altitude_m is not None:
            return Environment.at_altitude(self.altitude_m, self.gravity)
        return Environment(air_density=self.air_density, gravity=self.gravity)


class CostConfig(BaseParamsModel):
    cost_index: Optional[float] = Field(default=None, ge=0)
    c_time: Optional[float] = Field(default=None, ge=0)
    c_fuel: Optional[float] = Field(default=None, gt=0)
    c_charge: Optional[float] = Field(default=None, gt=0)

    @root_validator(skip_on_failure=True)
    def check_fuel_price(cls, values):
        if (
            values.get("c_fuel") is not None
            and values.get("c_charge") is not None
        ):
            raise ValueError("c_fuel and c_charge are mutually exclusive")
        has_time: bool = values.get("c_time") is not None
        has_price: bool = (
            values.get("c_fuel") is not None
            or values.get("c_charge") is not None
        )
        if has_time != has_price:
            raise ValueError("c_time needs one of c_fuel or c_charge")
        if not has_time and values.get("cost_index") is None:
            raise ValueError("cost_index or c_time with a price is required")
        return values

    def to_cost_model(self, fc: FuelCellParams, env: Environment) -> CostModel:
        if self.c_charge is not None:
            return CostModel.from_charge_cost(
                self.c_time, self.c_charge, fc, env
            )
        return CostModel(
            cost_index=self.cost_index, c_time=self.c_time, c_fuel=self.c_fuel
        )


class CiRange(BaseParamsModel):
    start: float = Field(..., ge=0)
    stop: float = Field(..., gt=0)
    num: int = Field(..., ge=1)

    def values(self) -> list[float]:
        return np.linspace(self.start, self.stop, self.num).tolist()


class MissionConfig(BaseParamsModel):
    x_d: float = Field(default=200_000.0, gt=0, description="Range (m)")
    mode: Mode = Mode.SUBOPTIMAL
    cruise_speed: float = Field(
        default=145.0 / KMH_PER_MPS,
        gt=0,
        description="Reference cruise speed for the feasibility report (m/s)",
    )
    steps: int = Field(default=2000, ge=10, description="RK4 steps")


class OutputConfig(BaseParamsModel):
    directory: Optional[str] = Field(
        default=None,
        description="Output directory, falls back to H2CRUISE_OUTPUT",
    )
    formats: list[Literal["csv", "svg"]] = Field(
        default_factory=lambda: ["csv", "svg"]
    )


class RunConfig(BaseParamsModel):
    """Validated run config that loaded from a JSON file, SI units only."""

    aircraft: AircraftParams
    fuelcell: FuelCellParams
    environment: EnvironmentConfig
    cost: Optional[CostConfig] = None
    ci_grid: Optional[list[float]] = None
    mission: MissionConfig = Field(default_factory=MissionConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    estimates: list[str] = Field(
        default_factory=list,
        description="Dotted keys of values that are external estimates",
    )

    @validator("ci_grid", pre=True)
    def expand_ci_range(cls, value):
        if isinstance(value, dict):
            return CiRange.parse_obj(value).values()
        return value

    @validator("ci_grid")
    def check_ci_grid(cls, value):
        if value is None:
            return value
        if not value:
            raise ValueError("ci_grid must not be empty")
        if any(ci < 0 for ci in value):
            raise ValueError("ci_grid values must be nonnegative")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("ci_grid must be strictly increasing")
        return value

    def build_environment(self) -> Environment:
        return self.environment.to_environment()

    def build_cost(self, cost_index: Optional[float] = None) -> CostModel:
        """Return the cost model, where an explicit cost index (from the
        command line) wins over the config section."""
        if cost_index is not None:
            return CostModel(cost_index=cost_index)
        if self.cost is None:
            raise ConfigValidateError(
                "cost", "a cost section or a --ci value is required"
            )
        try:
            return self.cost.to_cost_model(
                self.fuelcell, self.build_environment()
            )
        except ValidationError as err:
            raise ConfigValidateError("cost", str(err)) from err

    def require_grid(self) -> list[float]:
        if self.ci_grid is None:
            raise ConfigValidateError(
                "ci_grid", "a sweep needs a cost-index grid"
            )
        return self.ci_grid
