"""Seedable, portable random number generation.

The stream generator is xoshiro256++ seeded through splitmix64; Gaussian
variates use the Box-Muller transform on 53-bit uniforms. Both choices are
fixed so that identical seeds give bit-identical output across processes,
regardless of the NumPy version in use. Raw 64-bit block generation is the
hot path and runs through the kernel backend (see ``_kernels``).
"""

from __future__ import annotations

import numpy as np

from . import _kernels

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_INV53 = 2.0 ** -53
_TWO_PI = 2.0 * np.pi


def mix64(z: int) -> int:
    """splitmix64 finalizer; a bijective 64-bit mix."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def child_seed(seed: int, index: int) -> int:
    """Derive the ``index``-th independent child seed from ``seed``.

    Equals the ``index``-th output of a splitmix64 sequence started at
    ``seed``, so children form a reproducible family.
    """
    return mix64((seed + (index + 1) * _GOLDEN) & _MASK64)


class Xoshiro256PlusPlus:
    """xoshiro256++ stream with Box-Muller Gaussian variates.

    State is seeded from four consecutive splitmix64 outputs. Uniforms are
    ``(x >> 11) * 2**-53`` in [0, 1); the Box-Muller radius argument uses
    ``((x >> 11) + 1) * 2**-53`` in (0, 1] so the log never sees zero.
    """

    def __init__(self, seed: int):
        seed = int(seed) & _MASK64
        s = []
        z = seed
        for _ in range(4):
            z = (z + _GOLDEN) & _MASK64
            s.append(mix64(z))
        if not any(s):  # all-zero state is the one forbidden xoshiro state
            s[0] = _GOLDEN
        self._state = tuple(s)

    def raw(self, n: int) -> np.ndarray:
        """Next ``n`` raw uint64 outputs."""
        out = np.empty(n, dtype=np.uint64)
        self._state = _kernels.xoshiro_fill(*self._state, out)
        return out

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles uniform on [0, 1)."""
        return (self.raw(n) >> np.uint64(11)).astype(np.float64) * _INV53

    def uniforms_open(self, n: int) -> np.ndarray:
        """n doubles uniform on (0, 1]."""
        return ((self.raw(n) >> np.uint64(11)) + np.uint64(1)).astype(
            np.float64
        ) * _INV53

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * float(self.uniforms(1)[0])

    def integer(self, n: int) -> int:
        """One integer uniform on [0, n)."""
        return int(self.uniforms(1)[0] * n)

    def normals(self, n: int) -> np.ndarray:
        """n standard normal variates (Box-Muller, pair-interleaved)."""
        m = (n + 1) // 2
        block = self.raw(2 * m)
        u1 = ((block[0::2] >> np.uint64(11)) + np.uint64(1)).astype(
            np.float64
        ) * _INV53
        u2 = (block[1::2] >> np.uint64(11)).astype(np.float64) * _INV53
        r = np.sqrt(-2.0 * np.log(u1))
        out = np.empty(2 * m, dtype=np.float64)
        out[0::2] = r * np.cos(_TWO_PI * u2)
        out[1::2] = r * np.sin(_TWO_PI * u2)
        return out[:n]
