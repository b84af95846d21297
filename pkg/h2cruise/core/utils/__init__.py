from .config import (
    CONF_PATH,
    H2CRUISE_PATH,
    Environs,
    Params,
)
from .logging_ import get_logger
from .reusables import (
    fmt_float,
    thin,
)
