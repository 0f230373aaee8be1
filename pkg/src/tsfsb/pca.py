"""Within-set redundancy: PCA explained-variance analysis.

The matrix is re-centered (column means drift after series filtering) but
not re-scaled, since pipeline z-scoring already normalized the columns.
Singular values of the centered data matrix give the explained-variance
ratios; the covariance eigendecomposition is kept to the test suite as an
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PipelineStateError
from .matrix import FeatureMatrix


@dataclass(frozen=True)
class PcaResult:
    set_id: str
    explained_ratio: np.ndarray  # descending, sums to 1
    total_components: int

    def __post_init__(self):
        r = np.asarray(self.explained_ratio, dtype=np.float64)
        if abs(float(r.sum()) - 1.0) > 1e-9:
            raise DomainError("explained ratios must sum to 1")
        if np.any(np.diff(r) > 1e-9):
            raise DomainError("explained ratios must be non-increasing")
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "explained_ratio", r)


def pca(m: FeatureMatrix) -> PcaResult:
    """Explained-variance ratios of the centered matrix via SVD."""
    if np.isnan(m.values).any():
        raise PipelineStateError(
            "matrix has missing values; run the filter pipeline before PCA"
        )
    if not m.normalized:
        raise PipelineStateError("matrix must be normalized before PCA")
    if m.n_series < 2 or m.n_features < 1:
        raise DomainError(
            f"PCA needs >= 2 series and >= 1 feature, got "
            f"{m.n_series} x {m.n_features}"
        )
    centered = m.values - m.values.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    power = svals ** 2
    total = float(power.sum())
    if total == 0.0:
        raise DomainError("degenerate all-constant matrix")
    return PcaResult(
        set_id=m.set_id,
        explained_ratio=power / total,
        total_components=min(m.n_series, m.n_features),
    )


def cumvar_curve(result: PcaResult) -> np.ndarray:
    """(k / total_components, cumulative variance) for k = 1..total."""
    ratios = result.explained_ratio
    total = result.total_components
    # explained_ratio has min(n, p) entries == total_components
    fractions = np.arange(1, total + 1) / total
    return np.column_stack([fractions, np.cumsum(ratios)])


def prop_pcs_for_threshold(result: PcaResult, theta: float = 0.90) -> float:
    """Smallest k with cumulative variance >= theta, over total components."""
    if not 0.0 < theta <= 1.0:
        raise DomainError(f"threshold must be in (0, 1], got {theta}")
    cum = np.cumsum(result.explained_ratio)
    k = int(np.searchsorted(cum, theta, side="left")) + 1
    k = min(k, result.total_components)  # guard against float shortfall at 1.0
    return k / result.total_components


def components_for_threshold(result: PcaResult, theta: float = 0.90) -> int:
    """The k* count behind prop_pcs_for_threshold."""
    return round(prop_pcs_for_threshold(result, theta) * result.total_components)
