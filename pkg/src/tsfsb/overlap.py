"""Between-set overlap: Spearman machinery and the directed similarity S(T|B).

For a test set T and benchmark set B, every test feature is scored by its
best absolute Spearman correlation against all benchmark features; S(T|B)
is the mean of those per-feature maxima. S is asymmetric by construction.

Conventions (the literature leaves both open): ties get average ranks, and
correlations against a constant column are recorded as 0 with a warning so
S stays computable.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import AlignmentError, DomainError, PipelineStateError
from .matrix import FeatureMatrix

# |rho| this close to 1 triggers an exact rank-agreement check so perfect
# monotone matches come out as exactly 1.0
_SNAP_BAND = 1e-9

_CHUNK = 128  # test-column chunk size; fixed so results ignore thread count


def rank_transform(x: np.ndarray) -> np.ndarray:
    """Average ranks (1-based); tied values share the mean of their ranks."""
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    sx = x[order]
    ranks = np.empty(x.size, dtype=np.float64)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and sx[j + 1] == sx[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Spearman rank correlation with average-rank tie handling.

    Missing (NaN) if either input is constant.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size != y.size:
        raise DomainError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 3:
        raise DomainError(f"need at least 3 observations, got {x.size}")
    rx = rank_transform(x)
    ry = rank_transform(y)
    cx = rx - rx.mean()
    cy = ry - ry.mean()
    nx = float(np.dot(cx, cx))
    ny = float(np.dot(cy, cy))
    if nx == 0.0 or ny == 0.0:
        return float("nan")
    if np.array_equal(rx, ry):
        return 1.0
    n = x.size
    if np.array_equal(rx + ry, np.full(n, n + 1.0)):
        return -1.0
    return float(np.dot(cx, cy) / np.sqrt(nx * ny))


@dataclass(frozen=True)
class OverlapResult:
    test_set: str
    benchmark_set: str
    feature_names: list[str]
    rho_max: np.ndarray  # per test feature, in [0, 1]
    S: float

    def __post_init__(self):
        r = np.asarray(self.rho_max, dtype=np.float64)
        if r.size and (r.min() < 0.0 or r.max() > 1.0):
            raise DomainError("rho_max values must lie in [0, 1]")
        if float(np.mean(r)) != self.S:
            raise DomainError("S must equal the mean of rho_max exactly")
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "rho_max", r)


@dataclass(frozen=True)
class OverlapMatrix:
    set_ids: list[str]
    S_values: np.ndarray  # [benchmark row, test column]


def _check_aligned(tm: FeatureMatrix, bm: FeatureMatrix) -> None:
    if tm.series_ids != bm.series_ids:
        raise AlignmentError(
            f"matrices {tm.set_id!r} and {bm.set_id!r} are not aligned to "
            "the same series in the same order"
        )
    if np.isnan(tm.values).any() or np.isnan(bm.values).any():
        raise PipelineStateError(
            "overlap needs complete matrices; run the filter pipeline first"
        )
    if tm.n_series < 3:
        raise DomainError("need at least 3 aligned series")


def _centered_ranks(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-column centered ranks, their norms, and the raw ranks."""
    ranks = np.empty_like(values)
    for j in range(values.shape[1]):
        ranks[:, j] = rank_transform(values[:, j])
    centered = ranks - ranks.mean(axis=0)
    norms = np.sqrt((centered ** 2).sum(axis=0))
    return centered, norms, ranks


def cross_correlation(
    tm: FeatureMatrix, bm: FeatureMatrix, threads: int = 1
) -> np.ndarray:
    """|Spearman| grid, test features as rows, benchmark features as columns.

    Constant columns produce 0 entries (warned). Entries at exact monotone
    agreement are exactly 1.0. Output is identical for any thread count.
    """
    _check_aligned(tm, bm)
    ct, nt, rt = _centered_ranks(tm.values)
    cb, nb, rb = _centered_ranks(bm.values)

    t_const = nt == 0.0
    b_const = nb == 0.0
    if t_const.any() or b_const.any():
        warnings.warn(
            f"constant columns in {tm.set_id!r}/{bm.set_id!r}: "
            "their correlations are recorded as 0"
        )
    nt_safe = np.where(t_const, 1.0, nt)
    nb_safe = np.where(b_const, 1.0, nb)

    n = tm.n_series
    rev = float(n + 1)

    def compute_chunk(start: int) -> np.ndarray:
        stop = min(start + _CHUNK, ct.shape[1])
        g = np.abs(ct[:, start:stop].T @ cb)
        g /= nt_safe[start:stop, None]
        g /= nb_safe[None, :]
        # snap exact monotone matches to 1.0, clip roundoff overshoot
        hits = np.argwhere(g > 1.0 - _SNAP_BAND)
        for i, j in hits:
            ti = start + int(i)
            if np.array_equal(rt[:, ti], rb[:, j]) or np.array_equal(
                rt[:, ti] + rb[:, j], np.full(n, rev)
            ):
                g[i, j] = 1.0
            else:
                g[i, j] = min(g[i, j], 1.0)
        g[:, b_const] = 0.0
        g[t_const[start:stop], :] = 0.0
        return g

    starts = list(range(0, ct.shape[1], _CHUNK))
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(compute_chunk, starts))
    else:
        chunks = [compute_chunk(s) for s in starts]
    return np.vstack(chunks) if chunks else np.empty((0, bm.n_features))


def overlap_S(
    tm: FeatureMatrix, bm: FeatureMatrix, threads: int = 1
) -> OverlapResult:
    """Directed overlap of test set ``tm`` given benchmark set ``bm``."""
    grid = cross_correlation(tm, bm, threads=threads)
    rho_max = grid.max(axis=1)
    return OverlapResult(
        test_set=tm.set_id,
        benchmark_set=bm.set_id,
        feature_names=list(tm.feature_names),
        rho_max=rho_max,
        S=float(np.mean(rho_max)),
    )


def pairwise_overlap(
    matrices: list[FeatureMatrix], threads: int = 1
) -> OverlapMatrix:
    """S(T|B) for all ordered pairs; benchmarks as rows, tests as columns."""
    if len(matrices) < 2:
        raise DomainError("pairwise overlap needs at least 2 matrices")
    k = len(matrices)
    grid = np.empty((k, k))
    for b in range(k):
        for t in range(k):
            grid[b, t] = overlap_S(matrices[t], matrices[b], threads=threads).S
    return OverlapMatrix(set_ids=[m.set_id for m in matrices], S_values=grid)


def least_matched(
    tm: FeatureMatrix,
    bm: FeatureMatrix,
    cutoff: float = 0.2,
    threads: int = 1,
) -> list[tuple[str, float]]:
    """Test features with rho_max strictly below ``cutoff``, ascending."""
    result = overlap_S(tm, bm, threads=threads)
    below = [
        (name, float(r))
        for name, r in zip(result.feature_names, result.rho_max)
        if r < cutoff
    ]
    below.sort(key=lambda item: (item[1], item[0]))
    return below
