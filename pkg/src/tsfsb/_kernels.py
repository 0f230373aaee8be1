"""Hot inner-loop kernels.

Each kernel has two interchangeable implementations: a numba ``@njit``
version and a pure NumPy/Python fallback. The fallback is selected when
numba is unavailable or when ``TSFSB_NO_NUMBA`` is set in the environment.
Both paths are required to produce bit-identical results (the sequential
recurrences perform the identical IEEE operation sequence; the integer
kernels are exact), which keeps every downstream artifact independent of
the backend. ``benchmarks/backend_bench.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_MASK64 = (1 << 64) - 1


def _env_disables_numba() -> bool:
    return os.environ.get("TSFSB_NO_NUMBA", "").strip().lower() in {
        "1", "true", "yes", "on",
    }


# ---------------------------------------------------------------------------
# pure-Python / NumPy fallbacks
# ---------------------------------------------------------------------------

def xoshiro_fill_py(s0: int, s1: int, s2: int, s3: int, out: np.ndarray):
    """Fill ``out`` (uint64) from a xoshiro256++ stream; returns new state."""
    m = _MASK64
    buf = out.view(np.uint64)
    for i in range(buf.size):
        a = (s0 + s3) & m
        res = ((((a << 23) & m) | (a >> 41)) + s0) & m
        t = (s1 << 17) & m
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = (((s3 << 45) & m) | (s3 >> 19)) & m
        buf[i] = res
    return s0, s1, s2, s3


def ar1_path_py(eps: np.ndarray, phi: float) -> np.ndarray:
    """x[0] = eps[0]; x[t] = phi * x[t-1] + eps[t]."""
    x = np.empty_like(eps)
    acc = eps[0]
    x[0] = acc
    for t in range(1, eps.size):
        acc = phi * acc + eps[t]
        x[t] = acc
    return x


def logistic_path_py(r: float, x0: float, burn: int, n: int) -> np.ndarray:
    """Logistic-map trajectory after ``burn`` discarded iterates."""
    x = x0
    for _ in range(burn):
        x = r * x * (1.0 - x)
    out = np.empty(n, dtype=np.float64)
    for t in range(n):
        x = r * x * (1.0 - x)
        out[t] = x
    return out


def longest_run_above_py(x: np.ndarray, threshold: float) -> int:
    """Length of the longest run of samples strictly above ``threshold``."""
    above = x > threshold
    if not above.any():
        return 0
    # run lengths via boundaries of the boolean mask
    padded = np.concatenate(([False], above, [False]))
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    return int((edges[1::2] - edges[0::2]).max())


# ---------------------------------------------------------------------------
# numba versions
# ---------------------------------------------------------------------------

NUMBA_ENABLED = False

if not _env_disables_numba():
    try:
        from numba import njit

        @njit(cache=True)
        def _xoshiro_fill_nb(s0, s1, s2, s3, out):  # pragma: no cover - jit
            for i in range(out.size):
                a = s0 + s3
                res = ((a << np.uint64(23)) | (a >> np.uint64(41))) + s0
                t = s1 << np.uint64(17)
                s2 ^= s0
                s3 ^= s1
                s1 ^= s2
                s0 ^= s3
                s2 ^= t
                s3 = (s3 << np.uint64(45)) | (s3 >> np.uint64(19))
                out[i] = res
            return s0, s1, s2, s3

        @njit(cache=True)
        def _ar1_path_nb(eps, phi):  # pragma: no cover - jit
            x = np.empty_like(eps)
            acc = eps[0]
            x[0] = acc
            for t in range(1, eps.size):
                acc = phi * acc + eps[t]
                x[t] = acc
            return x

        @njit(cache=True)
        def _logistic_path_nb(r, x0, burn, n):  # pragma: no cover - jit
            x = x0
            for _ in range(burn):
                x = r * x * (1.0 - x)
            out = np.empty(n, dtype=np.float64)
            for t in range(n):
                x = r * x * (1.0 - x)
                out[t] = x
            return out

        @njit(cache=True)
        def _longest_run_above_nb(x, threshold):  # pragma: no cover - jit
            best = 0
            cur = 0
            for i in range(x.size):
                if x[i] > threshold:
                    cur += 1
                    if cur > best:
                        best = cur
                else:
                    cur = 0
            return best

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


if NUMBA_ENABLED:
    BACKEND = "numba"

    def xoshiro_fill(s0, s1, s2, s3, out):
        ns0, ns1, ns2, ns3 = _xoshiro_fill_nb(
            np.uint64(s0), np.uint64(s1), np.uint64(s2), np.uint64(s3), out
        )
        return int(ns0), int(ns1), int(ns2), int(ns3)

    def ar1_path(eps, phi):
        return _ar1_path_nb(eps, phi)

    def logistic_path(r, x0, burn, n):
        return _logistic_path_nb(r, x0, burn, n)

    def longest_run_above(x, threshold):
        return int(_longest_run_above_nb(x, threshold))
else:
    BACKEND = "numpy"
    xoshiro_fill = xoshiro_fill_py
    ar1_path = ar1_path_py
    logistic_path = logistic_path_py
    longest_run_above = longest_run_above_py
