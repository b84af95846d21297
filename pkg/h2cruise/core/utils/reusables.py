# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------
from __future__ import annotations

from collections.abc import Sequence
from typing import Optional, TypeVar

import numpy as np

__all__ = (
    "fmt_float",
    "thin",
)

T = TypeVar("T")


def fmt_float(value: Optional[float], digits: int = 12) -> str:
    """Format a float with a fixed number of significant digits.

    Examples:
        >>> fmt_float(1 / 3)
        '0.333333333333'
        >>> fmt_float(None)
        ''
    """
    if value is None:
        return ""
    return f"{value:.{digits}g}"


def thin(values: Sequence[T], max_rows: int) -> list[T]:
    """Decimate a sequence to at most `max_rows` items, always keeping the
    first and the last one.

    Examples:
        >>> thin(list(range(10)), 4)
        [0, 3, 6, 9]
    """
    if max_rows < 2:
        raise ValueError("max_rows must keep at least the two end points")
    if len(values) <= max_rows:
        return list(values)
    index = np.unique(
        np.round(np.linspace(0, len(values) - 1, max_rows)).astype(int)
    )
    return [values[i] for i in index]
