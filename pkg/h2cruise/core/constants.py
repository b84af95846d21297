"""Physical constants and unit factors, all SI."""

STANDARD_GRAVITY: float = 9.80665

# International Standard Atmosphere, troposphere layer.
ISA_RHO0: float = 1.225
ISA_T0: float = 288.15
ISA_LAPSE: float = 0.0065
ISA_R: float = 287.053
TROPOPAUSE_M: float = 11000.0

FARADAY: float = 96485.332
MOLAR_MASS_H2: float = 2.016e-3

KMH_PER_MPS: float = 3.6
SECONDS_PER_MINUTE: float = 60.0
