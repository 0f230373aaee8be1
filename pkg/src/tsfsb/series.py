"""Time-series model, synthetic generators and corpus ingestion.

Corpus files are plain text, one numeric value per line, UTF-8 with '.'
decimal separator; lines starting with '#' are comments. The series id is
the file stem.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._kernels import ar1_path, logistic_path
from .errors import ConfigurationError, DomainError, EmptyCorpusError
from .rng import Xoshiro256PlusPlus, child_seed

SOURCES = ("gaussian-noise", "noisy-sine", "synthetic-corpus", "ingested")

DEFAULT_MAX_LEN = 1000


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled, univariate series of finite real values."""

    id: str
    values: np.ndarray
    source: str = "ingested"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 2:
            raise DomainError(f"series {self.id!r}: need at least 2 samples")
        if not np.isfinite(v).all():
            raise DomainError(f"series {self.id!r}: non-finite values")
        if self.source not in SOURCES:
            raise DomainError(f"series {self.id!r}: unknown source {self.source!r}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Corpus:
    """Immutable, ordered collection of series with unique ids."""

    name: str
    series: tuple[TimeSeries, ...]

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        ids = [ts.id for ts in self.series]
        if len(set(ids)) != len(ids):
            raise DomainError(f"corpus {self.name!r}: duplicate series ids")

    def __len__(self) -> int:
        return len(self.series)

    def __iter__(self):
        return iter(self.series)

    @property
    def ids(self) -> list[str]:
        return [ts.id for ts in self.series]


@dataclass(frozen=True)
class GeneratorConfig:
    """Configuration for the two benchmark-input generators.

    The sinusoid is sampled on the inclusive uniform grid
    ``t_k = t_max * k / (n - 1)``, k = 0..n-1.
    """

    n: int
    seed: int
    noise_sd: float = 1.0
    amplitude: float = 2.0
    angular_freq: float = 2.0
    t_max: float = 3.0 * math.pi

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError(f"n must be >= 2, got {self.n}")
        if self.noise_sd < 0:
            raise ConfigurationError(f"noise_sd must be >= 0, got {self.noise_sd}")


def gen_gaussian_noise(cfg: GeneratorConfig) -> TimeSeries:
    """i.i.d. draws from N(0, noise_sd^2); deterministic per seed."""
    rng = Xoshiro256PlusPlus(cfg.seed)
    values = cfg.noise_sd * rng.normals(cfg.n)
    return TimeSeries(
        id=f"gaussian-noise-{cfg.seed}", values=values, source="gaussian-noise"
    )


def gen_noisy_sinusoid(cfg: GeneratorConfig) -> TimeSeries:
    """amplitude*sin(angular_freq*t) + N(0, noise_sd^2) on the inclusive grid."""
    rng = Xoshiro256PlusPlus(cfg.seed)
    t = cfg.t_max * np.arange(cfg.n, dtype=np.float64) / (cfg.n - 1)
    values = cfg.amplitude * np.sin(cfg.angular_freq * t)
    if cfg.noise_sd > 0:
        values = values + cfg.noise_sd * rng.normals(cfg.n)
    return TimeSeries(
        id=f"noisy-sine-{cfg.seed}", values=values, source="noisy-sine"
    )


# ---------------------------------------------------------------------------
# diverse synthetic corpus
# ---------------------------------------------------------------------------
#
# Five qualitative families. Parameter ranges mimic real-world archives:
# arbitrary units (wide log-uniform scales) and baselines, oscillations that
# are phase-locked to the sampling window, and trend-dominated walks, so the
# corpus carries strong coherent low-frequency Fourier structure alongside
# broadband stochastic families. Proportions below weight the coherent
# families most heavily.

_FAMILY_WEIGHTS = (
    ("sine", 0.385),
    ("walk", 0.385),
    ("noise", 0.080),
    ("ar1", 0.075),
    ("logistic", 0.075),
)

_LOGISTIC_BURN = 100  # standard burn-in before sampling the attractor


def _scale_offset(rng: Xoshiro256PlusPlus) -> tuple[float, float]:
    s = 10.0 ** rng.uniform(-1.0, 1.5)
    off = s * 2.0 * float(rng.normals(1)[0])
    return s, off


def _unit_marginal(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    """Zero-mean, unit-variance draws from one of four marginal shapes."""
    kind = rng.integer(4)
    if kind == 0:
        return rng.normals(n)
    if kind == 1:
        return (2.0 * rng.uniforms(n) - 1.0) * math.sqrt(3.0)
    if kind == 2:
        u = rng.uniforms(n) - 0.5
        return -math.sqrt(0.5) * np.sign(u) * np.log1p(-2.0 * np.abs(u))
    e = -np.log(rng.uniforms_open(n)) - 1.0
    return e if rng.uniform() < 0.5 else -e


def _gen_sine(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    s, off = _scale_offset(rng)
    # cycles per window, kept in a band whose 2nd/3rd harmonics cannot
    # alias into the lowest tenth of the spectrum
    f = 10.0 ** rng.uniform(math.log10(0.07 * n), math.log10(0.30 * n))
    noise_ratio = 10.0 ** rng.uniform(-3.0, -2.0)
    h2 = rng.uniform(0.0, 0.9)
    p2 = (math.pi / 2.0) * rng.integer(4)
    h3 = rng.uniform(0.0, 0.6)
    p3 = (math.pi / 2.0) * rng.integer(4)
    th = 2.0 * math.pi * f * np.arange(n, dtype=np.float64) / n
    x = (
        np.sin(th)
        + h2 * np.sin(2.0 * th + p2)
        + h3 * np.sin(3.0 * th + p3)
        + noise_ratio * rng.normals(n)
    )
    if rng.uniform() < 0.3:  # amplitude modulation by a slow envelope
        depth = rng.uniform(0.2, 0.7)
        f_am = rng.uniform(1.0, 4.0)
        x = x * (1.0 + depth * np.sin(
            2.0 * math.pi * f_am * np.arange(n, dtype=np.float64) / n))
    if rng.uniform() < 0.3:  # additive slow component at an exact bin
        f_slow = float(2 + rng.integer(4))
        g = rng.uniform(0.15, 0.45)
        x = x + g * np.sin(
            2.0 * math.pi * f_slow * np.arange(n, dtype=np.float64) / n)
    return off + s * x


def _gen_walk(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    s, off = _scale_offset(rng)
    sign = 1.0 if rng.uniform() < 0.5 else -1.0
    mu = sign * rng.uniform(0.001, 0.005)
    sd = 10.0 ** rng.uniform(-3.8, -2.8)
    return off + s * np.cumsum(mu + sd * rng.normals(n))


def _gen_noise(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    s, off = _scale_offset(rng)
    return off + s * _unit_marginal(rng, n)


def _gen_ar1(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    s, off = _scale_offset(rng)
    phi = rng.uniform(-0.95, 0.95)
    eps = _unit_marginal(rng, n)
    return off + s * ar1_path(eps, phi)


def _gen_logistic(rng: Xoshiro256PlusPlus, n: int) -> np.ndarray:
    s, off = _scale_offset(rng)
    r = rng.uniform(3.5, 4.0)
    x0 = rng.uniform(0.05, 0.95)
    return off + s * logistic_path(r, x0, _LOGISTIC_BURN, n)

_FAMILY_GENERATORS = {
    "sine": _gen_sine,
    "walk": _gen_walk,
    "noise": _gen_noise,
    "ar1": _gen_ar1,
    "logistic": _gen_logistic,
}


def _apportion(count: int) -> list[str]:
    """Largest-remainder split of ``count`` across the family weights."""
    quotas = [(name, count * w) for name, w in _FAMILY_WEIGHTS]
    base = {name: int(q) for name, q in quotas}
    left = count - sum(base.values())
    by_frac = sorted(quotas, key=lambda t: t[1] - int(t[1]), reverse=True)
    for name, _ in by_frac[:left]:
        base[name] += 1
    out = []
    for name, _ in _FAMILY_WEIGHTS:
        out.extend([name] * base[name])
    return out


def gen_diverse_corpus(count: int, seed: int, length: int) -> Corpus:
    """Fixed-proportion mix of the five synthetic families.

    Every series has the requested length and its own child seed, so the
    corpus is deterministic in (count, seed, length) and series i is stable
    under changes of count.
    """
    if count < 1:
        raise ConfigurationError(f"count must be >= 1, got {count}")
    if length < 2:
        raise ConfigurationError(f"length must be >= 2, got {length}")
    families = _apportion(count)
    series = []
    for i, family in enumerate(families):
        rng = Xoshiro256PlusPlus(child_seed(seed, i))
        values = _FAMILY_GENERATORS[family](rng, length)
        series.append(TimeSeries(
            id=f"ts{i:04d}-{family}", values=values, source="synthetic-corpus"
        ))
    return Corpus(name=f"synthetic-corpus-{seed}", series=tuple(series))


def truncate(ts: TimeSeries, max_len: int = DEFAULT_MAX_LEN) -> TimeSeries:
    """First ``max_len`` samples of series strictly longer than that."""
    if max_len < 2:
        raise DomainError(f"max_len must be >= 2, got {max_len}")
    if len(ts) <= max_len:
        return ts
    return TimeSeries(id=ts.id, values=ts.values[:max_len], source=ts.source)


# ---------------------------------------------------------------------------
# corpus directory I/O
# ---------------------------------------------------------------------------

def _parse_series_file(path: Path) -> np.ndarray | None:
    """Values from one corpus file, or None (with a warning) if unusable."""
    values: list[float] = []
    text = path.read_text(encoding="utf-8")
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        for token in line.replace(",", " ").split():
            try:
                v = float(token)
            except ValueError:
                warnings.warn(f"{path.name}: unparseable value {token!r}; "
                              "series skipped")
                return None
            if not math.isfinite(v):
                warnings.warn(f"{path.name}: non-finite value {token!r}; "
                              "series skipped")
                return None
            values.append(v)
    if len(values) < 2:
        warnings.warn(f"{path.name}: fewer than 2 samples; series skipped")
        return None
    return np.array(values, dtype=np.float64)


def load_corpus(path, max_len: int = DEFAULT_MAX_LEN) -> Corpus:
    """Read a corpus directory; truncates and rejects non-finite series.

    Files are read in sorted name order. Duplicate file stems get numeric
    suffixes so corpus ids stay unique.
    """
    root = Path(path)
    if not root.exists():
        raise FileNotFoundError(f"corpus path does not exist: {root}")
    if not root.is_dir():
        raise NotADirectoryError(f"corpus path is not a directory: {root}")
    series = []
    seen: dict[str, int] = {}
    for f in sorted(root.iterdir()):
        if not f.is_file() or f.name.startswith(".") or f.suffix == ".json":
            continue
        values = _parse_series_file(f)
        if values is None:
            continue
        stem = f.stem
        if stem in seen:
            seen[stem] += 1
            sid = f"{stem}_{seen[stem]}"
        else:
            seen[stem] = 1
            sid = stem
        ts = TimeSeries(id=sid, values=values, source="ingested")
        series.append(truncate(ts, max_len))
    if not series:
        raise EmptyCorpusError(f"no usable series found under {root}")
    return Corpus(name=root.name, series=tuple(series))


def save_corpus(corpus: Corpus, path, header: str | None = None) -> None:
    """Write one text file per series (repr round-trip decimals).

    ``header`` becomes a leading '#' comment in every file.
    """
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    prefix = f"# {header}\n" if header else ""
    for ts in corpus:
        lines = "\n".join(repr(float(v)) for v in ts.values)
        (root / f"{ts.id}.txt").write_text(prefix + lines + "\n",
                                           encoding="utf-8")
