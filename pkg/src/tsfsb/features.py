"""Feature catalog and extraction engine.

Two built-in reference sets:

* ``distilled-22`` - 22 statistics spanning distribution shape, linear
  autocorrelation structure, spectral content, trend and stationarity.
  Deliberately low-redundancy: one feature per concept.
* ``fft-raw`` - the real, imaginary, absolute and angle components of the
  first k_max DFT coefficients. Deliberately redundancy-heavy, mirroring
  feature sets built from raw transform outputs.

A feature that is undefined on its input (zero variance, empty spectrum,
constant differences) is reported as missing (NaN), never raised and never
silently replaced by a finite value.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import longest_run_above
from .errors import ConfigurationError, DomainError
from .fourier import dft_coefficients
from .matrix import FeatureMatrix
from .series import Corpus, TimeSeries
from .stats import iqr, median

DISTILLED_SET = "distilled-22"
FFT_RAW_SET = "fft-raw"
SET_IDS = (DISTILLED_SET, FFT_RAW_SET)

FFT_RAW_DEFAULT_KMAX = 100
MIN_DISTILLED_LENGTH = 20

_INV_E = 1.0 / math.e


@dataclass(frozen=True)
class FeatureDescriptor:
    set_id: str
    name: str
    kind: str  # distribution | autocorrelation | spectral | stationarity | other


@dataclass(frozen=True)
class FeatureVector:
    """Feature values for one series; missing entries are NaN."""

    series_id: str
    values: dict[tuple[str, str], float]

    def array(self) -> np.ndarray:
        return np.array(list(self.values.values()), dtype=np.float64)


# ---------------------------------------------------------------------------
# autocorrelation
# ---------------------------------------------------------------------------

def acf(ts, lag: int) -> float:
    """Linear autocorrelation at ``lag``.

    r(tau) = sum_{t} (x_t - xbar)(x_{t+tau} - xbar) / sum_t (x_t - xbar)^2.
    Missing (NaN) for constant series; lag 0 is allowed as the 1.0 sanity
    value but is not a catalog feature.
    """
    x = np.asarray(getattr(ts, "values", ts), dtype=np.float64)
    n = x.size
    if lag < 0 or lag >= n:
        raise DomainError(f"lag must be in [0, {n - 1}], got {lag}")
    c = x - x.mean()
    den = float(np.dot(c, c))
    if den == 0.0:
        return float("nan")
    if lag == 0:
        return 1.0
    return float(np.dot(c[:-lag], c[lag:]) / den)


def _acf_sweep(c: np.ndarray, den: float, max_lag: int) -> np.ndarray:
    """r(1..max_lag) of the centered series ``c`` via one padded FFT."""
    n = c.size
    size = 1
    while size < 2 * n:
        size <<= 1
    f = np.fft.rfft(c, size)
    acov = np.fft.irfft(f * np.conj(f), size)[: max_lag + 1]
    return acov[1:] / den


# ---------------------------------------------------------------------------
# distilled-22
# ---------------------------------------------------------------------------

_DISTILLED_CATALOG = [
    ("mean", "distribution"),
    ("std", "distribution"),
    ("skewness", "distribution"),
    ("kurtosis_excess", "distribution"),
    ("min", "distribution"),
    ("max", "distribution"),
    ("median", "distribution"),
    ("iqr", "distribution"),
    ("acf_lag1", "autocorrelation"),
    ("acf_lag2", "autocorrelation"),
    ("acf_first_zero", "autocorrelation"),
    ("acf_first_1e", "autocorrelation"),
    ("zero_cross_rate", "autocorrelation"),
    ("longest_run_above_mean", "stationarity"),
    ("spectral_centroid", "spectral"),
    ("spectral_entropy", "spectral"),
    ("low_freq_power_frac", "spectral"),
    ("time_rev_asymmetry", "other"),
    ("trend_slope", "stationarity"),
    ("stat_av_10", "stationarity"),
    ("mean_abs_diff", "other"),
    ("frac_outside_1sigma", "distribution"),
]

DISTILLED_NAMES = [name for name, _ in _DISTILLED_CATALOG]


def compute_distilled(ts: TimeSeries) -> FeatureVector:
    """All 22 distilled features for one series (length >= 20)."""
    x = np.asarray(ts.values, dtype=np.float64)
    n = x.size
    if n < MIN_DISTILLED_LENGTH:
        raise DomainError(
            f"distilled-22 needs length >= {MIN_DISTILLED_LENGTH}, got {n}"
        )
    nan = float("nan")
    mean = float(x.mean())
    c = x - mean
    ssq = float(np.dot(c, c))
    std = math.sqrt(ssq / (n - 1))
    m2 = ssq / n
    constant = ssq == 0.0

    out: dict[str, float] = {}
    out["mean"] = mean
    out["std"] = std
    if constant:
        out["skewness"] = nan
        out["kurtosis_excess"] = nan
    else:
        m3 = float(np.mean(c ** 3))
        m4 = float(np.mean(c ** 4))
        out["skewness"] = m3 / m2 ** 1.5
        out["kurtosis_excess"] = m4 / m2 ** 2 - 3.0
    out["min"] = float(x.min())
    out["max"] = float(x.max())
    out["median"] = median(x)
    out["iqr"] = iqr(x)

    max_lag = n // 2
    if constant:
        out["acf_lag1"] = out["acf_lag2"] = nan
        out["acf_first_zero"] = out["acf_first_1e"] = nan
    else:
        r = _acf_sweep(c, ssq, max_lag)
        out["acf_lag1"] = float(r[0])
        out["acf_lag2"] = float(r[1])
        zero_hits = np.flatnonzero(r <= 0.0)
        out["acf_first_zero"] = float(zero_hits[0] + 1) if zero_hits.size else nan
        e_hits = np.flatnonzero(r < _INV_E)
        out["acf_first_1e"] = float(e_hits[0] + 1) if e_hits.size else nan

    # sign changes of the centered series; equals the z-scored definition
    # wherever that is defined, and stays finite for constant input
    out["zero_cross_rate"] = float(np.sum(c[:-1] * c[1:] < 0.0)) / (n - 1)
    out["longest_run_above_mean"] = longest_run_above(x, mean) / n

    m_bins = n // 2
    power = np.abs(np.fft.rfft(x)[1 : m_bins + 1]) ** 2
    total_power = float(power.sum())
    if constant or total_power == 0.0:
        out["spectral_centroid"] = nan
        out["spectral_entropy"] = nan
        out["low_freq_power_frac"] = nan
    else:
        freqs = np.arange(1, m_bins + 1) / n
        out["spectral_centroid"] = float((freqs * power).sum() / total_power)
        p = power / total_power
        pos = p[p > 0]
        out["spectral_entropy"] = float(-(pos * np.log(pos)).sum() / math.log(m_bins))
        low = power[: int(m_bins / 5)].sum()
        out["low_freq_power_frac"] = float(low / total_power)

    d = np.diff(x)
    d_ssq = float(np.dot(d - d.mean(), d - d.mean()))
    if d_ssq == 0.0:
        out["time_rev_asymmetry"] = nan
    else:
        d_std = math.sqrt(d_ssq / (n - 2))
        out["time_rev_asymmetry"] = float(np.mean(d ** 3)) / d_std ** 3

    t = np.arange(n, dtype=np.float64)
    tc = t - t.mean()
    out["trend_slope"] = float(np.dot(tc, x) / np.dot(tc, tc))

    if constant:
        out["stat_av_10"] = nan
        out["frac_outside_1sigma"] = nan
    else:
        w = n // 10
        window_means = x[: 10 * w].reshape(10, w).mean(axis=1)
        out["stat_av_10"] = float(np.std(window_means, ddof=1)) / std
        out["frac_outside_1sigma"] = float(np.mean(np.abs(c) > std))

    out["mean_abs_diff"] = float(np.mean(np.abs(d)))

    # overflow in a moment ratio is a failure, reported as missing
    values = {
        (DISTILLED_SET, name):
            out[name] if math.isfinite(out[name]) else float("nan")
        for name in DISTILLED_NAMES
    }
    return FeatureVector(series_id=ts.id, values=values)


# ---------------------------------------------------------------------------
# fft-raw
# ---------------------------------------------------------------------------

def _fft_raw_names(k_max: int) -> list[str]:
    names = []
    for k in range(k_max):
        names.extend([f"re_{k}", f"im_{k}", f"abs_{k}", f"arg_{k}"])
    return names


def compute_fft_raw(ts: TimeSeries, k_max: int) -> FeatureVector:
    """Re, Im, |.| and angle of X_0 .. X_{k_max-1} (4*k_max features).

    The angle of an exactly zero coefficient is missing.
    """
    coeffs = dft_coefficients(ts, k_max)
    nan = float("nan")

    def guard(v: float) -> float:
        return v if math.isfinite(v) else nan

    values: dict[tuple[str, str], float] = {}
    for k, z in enumerate(coeffs):
        mag = abs(z)
        values[(FFT_RAW_SET, f"re_{k}")] = guard(float(z.real))
        values[(FFT_RAW_SET, f"im_{k}")] = guard(float(z.imag))
        values[(FFT_RAW_SET, f"abs_{k}")] = guard(float(mag))
        values[(FFT_RAW_SET, f"arg_{k}")] = (
            float(np.angle(z)) if mag != 0.0 else nan
        )
    return FeatureVector(series_id=ts.id, values=values)


# ---------------------------------------------------------------------------
# set registry / extraction
# ---------------------------------------------------------------------------

def resolve_k_max(corpus: Corpus, k_max: int | None) -> int:
    """Default k_max: min(floor(N_min/2), 100) over the corpus."""
    if k_max is not None:
        if k_max < 1:
            raise ConfigurationError(f"k_max must be >= 1, got {k_max}")
        return k_max
    shortest = min(len(ts) for ts in corpus)
    return max(1, min(shortest // 2, FFT_RAW_DEFAULT_KMAX))


def catalog(set_id: str, k_max: int | None = None) -> list[FeatureDescriptor]:
    """Ordered descriptors of a built-in set."""
    if set_id == DISTILLED_SET:
        return [FeatureDescriptor(set_id, n, k) for n, k in _DISTILLED_CATALOG]
    if set_id == FFT_RAW_SET:
        k = FFT_RAW_DEFAULT_KMAX if k_max is None else k_max
        return [
            FeatureDescriptor(set_id, n, "spectral") for n in _fft_raw_names(k)
        ]
    raise ConfigurationError(f"unknown feature set {set_id!r}")


def extract_set(
    set_id: str,
    corpus: Corpus,
    k_max: int | None = None,
    threads: int = 1,
) -> FeatureMatrix:
    """One row per series, one column per catalog feature.

    Per-series failures become all-missing rows; per-feature failures become
    missing cells. Row order follows the corpus, column order the catalog.
    Results are identical for any thread count.
    """
    if set_id == DISTILLED_SET:
        names = list(DISTILLED_NAMES)

        def compute(ts: TimeSeries) -> FeatureVector:
            return compute_distilled(ts)

    elif set_id == FFT_RAW_SET:
        k = resolve_k_max(corpus, k_max)
        names = _fft_raw_names(k)

        def compute(ts: TimeSeries) -> FeatureVector:
            return compute_fft_raw(ts, k)

    else:
        raise ConfigurationError(f"unknown feature set {set_id!r}")

    def row(ts: TimeSeries) -> np.ndarray:
        try:
            fv = compute(ts)
        except DomainError:
            return np.full(len(names), np.nan)
        return np.array([fv.values[(set_id, n)] for n in names])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, corpus.series))
    else:
        rows = [row(ts) for ts in corpus.series]

    return FeatureMatrix(
        set_id=set_id,
        series_ids=list(corpus.ids),
        feature_names=names,
        values=np.vstack(rows) if rows else np.empty((0, len(names))),
    )
