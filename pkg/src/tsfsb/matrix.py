"""Feature matrix model, z-score normalization and missing-value filters.

Pipeline order: zscore_columns -> filter_features (per set) ->
filter_series (jointly across sets). After the full pipeline no missing
values remain in any matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AlignmentError, DomainError, PipelineStateError

DEFAULT_MAX_MISSING = 0.10


@dataclass(frozen=True)
class FeatureMatrix:
    """series x features grid of real values with NaN as the missing marker."""

    set_id: str
    series_ids: list[str]
    feature_names: list[str]
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise DomainError("matrix values must be 2-dimensional")
        if v.shape != (len(self.series_ids), len(self.feature_names)):
            raise DomainError(
                f"grid shape {v.shape} does not match "
                f"{len(self.series_ids)} series x {len(self.feature_names)} features"
            )
        if len(set(self.series_ids)) != len(self.series_ids):
            raise DomainError("duplicate series ids")
        if len(set(self.feature_names)) != len(self.feature_names):
            raise DomainError("duplicate feature names")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "series_ids", list(self.series_ids))
        object.__setattr__(self, "feature_names", list(self.feature_names))

    @property
    def n_series(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    def missing_fractions(self) -> np.ndarray:
        """Per-column fraction of missing entries."""
        return np.isnan(self.values).mean(axis=0)

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.feature_names.index(name)]


@dataclass
class FilterReport:
    """What a filter stage removed and why."""

    dropped_features: list[tuple[str, float]] = field(default_factory=list)
    dropped_series: list[tuple[str, int]] = field(default_factory=list)
    # dropped series id -> set ids whose missing values caused the drop
    series_sets: dict[str, list[str]] = field(default_factory=dict)
    retained_shape: tuple[int, int] | None = None


def zscore_columns(m: FeatureMatrix) -> FeatureMatrix:
    """Normalize each column to mean 0 / sample std 1 over present entries.

    Zero-variance columns become all-missing so the feature filter removes
    them; missing entries stay missing.
    """
    if m.normalized:
        raise PipelineStateError(f"matrix {m.set_id!r} already normalized")
    values = m.values.copy()
    for j in range(values.shape[1]):
        col = values[:, j]
        present = ~np.isnan(col)
        n_present = int(present.sum())
        if n_present < 2:
            col[:] = np.nan
            continue
        sub = col[present]
        mean = sub.mean()
        std = sub.std(ddof=1)
        if std == 0.0:
            col[:] = np.nan
        else:
            col[present] = (sub - mean) / std
    return FeatureMatrix(
        set_id=m.set_id,
        series_ids=m.series_ids,
        feature_names=m.feature_names,
        values=values,
        normalized=True,
    )


def filter_features(
    m: FeatureMatrix, max_missing: float = DEFAULT_MAX_MISSING
) -> tuple[FeatureMatrix, FilterReport]:
    """Keep columns whose missing fraction is strictly below ``max_missing``."""
    if not m.normalized:
        raise PipelineStateError("filter_features expects a normalized matrix")
    fractions = m.missing_fractions()
    keep = fractions < max_missing
    report = FilterReport(
        dropped_features=[
            (name, float(frac))
            for name, frac, k in zip(m.feature_names, fractions, keep)
            if not k
        ],
        retained_shape=(m.n_series, int(keep.sum())),
    )
    filtered = FeatureMatrix(
        set_id=m.set_id,
        series_ids=m.series_ids,
        feature_names=[n for n, k in zip(m.feature_names, keep) if k],
        values=m.values[:, keep],
        normalized=True,
    )
    return filtered, report


def filter_series(
    matrices: list[FeatureMatrix],
) -> tuple[list[FeatureMatrix], FilterReport]:
    """Drop every series with any missing value in any matrix.

    All matrices must share an identical, identically ordered series list;
    the report attributes each dropped series to the offending set(s).
    """
    if not matrices:
        raise DomainError("filter_series needs at least one matrix")
    ids = matrices[0].series_ids
    for m in matrices[1:]:
        if m.series_ids != ids:
            raise AlignmentError(
                f"series ids of {m.set_id!r} do not match {matrices[0].set_id!r}"
            )
    bad_counts = np.zeros(len(ids), dtype=int)
    offenders: dict[str, list[str]] = {}
    for m in matrices:
        row_missing = np.isnan(m.values).sum(axis=1)
        bad_counts += row_missing
        for i in np.flatnonzero(row_missing):
            offenders.setdefault(ids[i], []).append(m.set_id)
    keep = bad_counts == 0
    report = FilterReport(
        dropped_series=[
            (sid, int(cnt)) for sid, cnt, k in zip(ids, bad_counts, keep) if not k
        ],
        series_sets=offenders,
        retained_shape=(int(keep.sum()), sum(m.n_features for m in matrices)),
    )
    kept_ids = [sid for sid, k in zip(ids, keep) if k]
    filtered = [
        FeatureMatrix(
            set_id=m.set_id,
            series_ids=kept_ids,
            feature_names=m.feature_names,
            values=m.values[keep],
            normalized=m.normalized,
        )
        for m in matrices
    ]
    return filtered, report


def run_pipeline(
    matrices: list[FeatureMatrix], max_missing: float = DEFAULT_MAX_MISSING
) -> tuple[list[FeatureMatrix], list[FilterReport]]:
    """zscore -> feature filter (each matrix) -> joint series filter."""
    normalized = [
        m if m.normalized else zscore_columns(m) for m in matrices
    ]
    feature_filtered = []
    reports = []
    for m in normalized:
        fm, rep = filter_features(m, max_missing)
        feature_filtered.append(fm)
        reports.append(rep)
    final, series_report = filter_series(feature_filtered)
    reports.append(series_report)
    return final, reports
