"""Discrete Fourier transform coefficients and power spectrum.

Convention: X_k = sum_n x_n * exp(-2*pi*i*k*n/N), no normalization (the
standard FFT forward transform).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def _values(x) -> np.ndarray:
    v = getattr(x, "values", x)
    return np.asarray(v, dtype=np.float64)


def dft_coefficients(ts, k_max: int) -> np.ndarray:
    """First ``k_max`` DFT coefficients X_0 .. X_{k_max-1}.

    Requires 1 <= k_max <= floor(N/2).
    """
    x = _values(ts)
    n = x.size
    if not 1 <= k_max <= n // 2:
        raise DomainError(
            f"k_max must be in [1, {n // 2}] for length {n}, got {k_max}"
        )
    return np.fft.rfft(x)[:k_max]


def power_spectrum(ts) -> np.ndarray:
    """|X_k|^2 for k = 1 .. floor(N/2) (DC excluded)."""
    x = _values(ts)
    coeffs = np.fft.rfft(x)[1 : x.size // 2 + 1]
    return np.abs(coeffs) ** 2
