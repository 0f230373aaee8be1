"""tsfsb: time-series feature-set benchmarking toolkit.

Extracts the built-in reference feature sets over synthetic or ingested
corpora and evaluates any collection of feature-set matrices on three
axes: computation-time scaling, within-set redundancy (PCA) and directed
between-set overlap.
"""

__version__ = "0.1.0"

from .errors import (
    AlignmentError,
    ConfigurationError,
    DomainError,
    EmptyCorpusError,
    ParseError,
    PipelineStateError,
    SchemaError,
    TsfsbError,
)
from .series import (
    Corpus,
    GeneratorConfig,
    TimeSeries,
    gen_diverse_corpus,
    gen_gaussian_noise,
    gen_noisy_sinusoid,
    load_corpus,
    save_corpus,
    truncate,
)
from .features import (
    DISTILLED_SET,
    FFT_RAW_SET,
    FeatureDescriptor,
    FeatureVector,
    acf,
    catalog,
    compute_distilled,
    compute_fft_raw,
    extract_set,
)
from .fourier import dft_coefficients, power_spectrum
from .matrix import (
    FeatureMatrix,
    FilterReport,
    filter_features,
    filter_series,
    run_pipeline,
    zscore_columns,
)
from .interchange import read_interchange, write_interchange
from .pca import PcaResult, cumvar_curve, pca, prop_pcs_for_threshold
from .overlap import (
    OverlapMatrix,
    OverlapResult,
    cross_correlation,
    least_matched,
    overlap_S,
    pairwise_overlap,
    spearman,
)
from .bench import BenchmarkPlan, BenchResult, run_benchmark
from .stats import quantile

__all__ = [
    "__version__",
    "AlignmentError", "ConfigurationError", "DomainError", "EmptyCorpusError",
    "ParseError", "PipelineStateError", "SchemaError", "TsfsbError",
    "Corpus", "GeneratorConfig", "TimeSeries",
    "gen_diverse_corpus", "gen_gaussian_noise", "gen_noisy_sinusoid",
    "load_corpus", "save_corpus", "truncate",
    "DISTILLED_SET", "FFT_RAW_SET", "FeatureDescriptor", "FeatureVector",
    "acf", "catalog", "compute_distilled", "compute_fft_raw", "extract_set",
    "dft_coefficients", "power_spectrum",
    "FeatureMatrix", "FilterReport", "filter_features", "filter_series",
    "run_pipeline", "zscore_columns",
    "read_interchange", "write_interchange",
    "PcaResult", "cumvar_curve", "pca", "prop_pcs_for_threshold",
    "OverlapMatrix", "OverlapResult", "cross_correlation", "least_matched",
    "overlap_S", "pairwise_overlap", "spearman",
    "BenchmarkPlan", "BenchResult", "run_benchmark",
    "quantile",
]
