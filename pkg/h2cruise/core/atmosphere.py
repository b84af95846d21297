# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
"""Air density at the cruise altitude from the ISA troposphere law."""
from __future__ import annotations

from .constants import (
    ISA_LAPSE,
    ISA_R,
    ISA_RHO0,
    ISA_T0,
    STANDARD_GRAVITY,
    TROPOPAUSE_M,
)
from .errors import AtmosphereRangeError

_EXPONENT: float = STANDARD_GRAVITY / (ISA_R * ISA_LAPSE) - 1.0


def density_at(altitude_m: float) -> float:
    """Return the ISA air density (kg/m3) at a geopotential altitude.

    Examples:
        >>> density_at(0.0)
        1.225
        >>> round(density_at(1000.0), 3)
        1.112
    """
    if not 0.0 <= altitude_m <= TROPOPAUSE_M:
        raise AtmosphereRangeError(
            f"altitude {altitude_m} m is outside the troposphere model "
            f"[0, {TROPOPAUSE_M:.0f}] m"
        )
    if altitude_m == 0.0:
        return ISA_RHO0
    return ISA_RHO0 * (1.0 - ISA_LAPSE * altitude_m / ISA_T0) ** _EXPONENT
