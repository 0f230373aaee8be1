"""Shared order-statistics helpers.

One quantile convention is used everywhere: linear interpolation on sorted
data at rank h = (n - 1) * p (the common "type-7" rule).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def quantile(xs, p: float) -> float:
    """Type-7 quantile of ``xs`` at fraction ``p``."""
    a = np.asarray(xs, dtype=np.float64)
    if a.size == 0:
        raise DomainError("quantile of empty sequence")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"quantile fraction must be in [0, 1], got {p}")
    return float(np.quantile(a, p, method="linear"))


def median(xs) -> float:
    return quantile(xs, 0.5)


def iqr(xs) -> float:
    return quantile(xs, 0.75) - quantile(xs, 0.25)
