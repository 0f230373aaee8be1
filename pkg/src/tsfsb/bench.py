"""Computation-time benchmark protocol.

For each (set, length) cell: generate ``repeats`` fresh synthetic series
(one child seed per (length, repeat), shared across sets so every set is
timed on identical inputs), run one untimed warm-up extraction, then time
one full-set extraction per series on the monotonic clock. Generation is
excluded from the timed region, and the timed region always runs
single-threaded so per-feature cost is isolated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, TsfsbError
from .features import (
    DISTILLED_SET,
    FFT_RAW_SET,
    FFT_RAW_DEFAULT_KMAX,
    SET_IDS,
    compute_distilled,
    compute_fft_raw,
)
from .rng import child_seed
from .series import GeneratorConfig, gen_gaussian_noise, gen_noisy_sinusoid
from .stats import quantile

DEFAULT_LENGTHS = (100, 250, 500, 750, 1000)

_GENERATORS = {
    "gaussian-noise": gen_gaussian_noise,
    "noisy-sine": gen_noisy_sinusoid,
}


@dataclass(frozen=True)
class BenchmarkPlan:
    set_ids: tuple[str, ...]
    lengths: tuple[int, ...] = DEFAULT_LENGTHS
    repeats: int = 10
    generator: str = "gaussian-noise"
    seed: int = 0
    k_max: int | None = None  # fft-raw only; None = min(length // 2, 100)

    def __post_init__(self):
        object.__setattr__(self, "set_ids", tuple(self.set_ids))
        object.__setattr__(self, "lengths", tuple(int(x) for x in self.lengths))
        for sid in self.set_ids:
            if sid not in SET_IDS:
                raise ConfigurationError(f"unknown feature set {sid!r}")
        if not self.set_ids:
            raise ConfigurationError("no feature sets given")
        if not self.lengths:
            raise ConfigurationError("no lengths given")
        if any(b <= a for a, b in zip(self.lengths, self.lengths[1:])):
            raise ConfigurationError("lengths must be strictly increasing")
        if self.repeats < 1:
            raise ConfigurationError(f"repeats must be >= 1, got {self.repeats}")
        if self.generator not in _GENERATORS:
            raise ConfigurationError(f"unknown generator {self.generator!r}")


@dataclass(frozen=True)
class BenchRow:
    """One timed repeat. ``ok`` is False when extraction raised."""

    set_id: str
    length: int
    repeat: int
    wall_time_s: float
    n_features_ok: int
    ok: bool = True


@dataclass(frozen=True)
class BenchSummary:
    set_id: str
    length: int
    median_s: float
    iqr_s: float
    successful_feature_count: float
    per_feature_median_s: float
    failed_repeats: int = 0
    unbenchable: bool = False


@dataclass
class BenchResult:
    plan: BenchmarkPlan
    rows: list[BenchRow] = field(default_factory=list)

    def summaries(self) -> list[BenchSummary]:
        """Medians/IQRs recomputed from the stored raw rows."""
        out = []
        for set_id in self.plan.set_ids:
            for length in self.plan.lengths:
                cell = [
                    r for r in self.rows
                    if r.set_id == set_id and r.length == length
                ]
                good = [r for r in cell if r.ok]
                failed = len(cell) - len(good)
                if not good:
                    out.append(BenchSummary(
                        set_id, length, float("nan"), float("nan"),
                        float("nan"), float("nan"),
                        failed_repeats=failed, unbenchable=True,
                    ))
                    continue
                times = [r.wall_time_s for r in good]
                med = quantile(times, 0.5)
                spread = quantile(times, 0.75) - quantile(times, 0.25)
                count = quantile([r.n_features_ok for r in good], 0.5)
                out.append(BenchSummary(
                    set_id, length, med, spread, count,
                    per_feature_time(med, count), failed_repeats=failed,
                ))
        return out


def per_feature_time(median_s: float, feature_count: float) -> float:
    """Median full-set time divided by the successfully computed count."""
    if feature_count <= 0:
        return float("nan")
    return median_s / feature_count


def _extractor(set_id: str, length: int, k_max: int | None):
    if set_id == DISTILLED_SET:
        return compute_distilled
    if set_id == FFT_RAW_SET:
        k = min(length // 2, FFT_RAW_DEFAULT_KMAX) if k_max is None else k_max

        def run(ts):
            return compute_fft_raw(ts, k)

        return run
    raise ConfigurationError(f"unknown feature set {set_id!r}")


def run_benchmark(plan: BenchmarkPlan) -> BenchResult:
    generate = _GENERATORS[plan.generator]
    result = BenchResult(plan=plan)
    for li, length in enumerate(plan.lengths):
        series = [
            generate(GeneratorConfig(
                n=length,
                seed=child_seed(plan.seed, li * plan.repeats + rep),
            ))
            for rep in range(plan.repeats)
        ]
        # separate seed block for the untimed warm-up input
        warmup = generate(GeneratorConfig(
            n=length, seed=child_seed(plan.seed, 1_000_000 + li),
        ))
        for set_id in plan.set_ids:
            extract = _extractor(set_id, length, plan.k_max)
            try:
                extract(warmup)  # absorbs one-time allocation/JIT cost
            except TsfsbError:
                pass
            for rep, ts in enumerate(series):
                t0 = time.perf_counter()
                try:
                    fv = extract(ts)
                except TsfsbError:
                    result.rows.append(BenchRow(
                        set_id, length, rep, 0.0, 0, ok=False,
                    ))
                    continue
                elapsed = time.perf_counter() - t0
                n_ok = int(np.isfinite(fv.array()).sum())
                result.rows.append(BenchRow(
                    set_id, length, rep, elapsed, n_ok,
                ))
    return result
