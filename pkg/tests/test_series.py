import math
import warnings

import numpy as np
import pytest

from tsfsb import (
    ConfigurationError,
    Corpus,
    DomainError,
    EmptyCorpusError,
    GeneratorConfig,
    TimeSeries,
    gen_diverse_corpus,
    gen_gaussian_noise,
    gen_noisy_sinusoid,
    load_corpus,
    save_corpus,
    truncate,
)


class TestTimeSeries:
    def test_rejects_short(self):
        with pytest.raises(DomainError):
            TimeSeries(id="x", values=[1.0])

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            TimeSeries(id="x", values=[1.0, float("nan"), 2.0])
        with pytest.raises(DomainError):
            TimeSeries(id="x", values=[1.0, float("inf")])

    def test_values_read_only(self):
        ts = TimeSeries(id="x", values=[1.0, 2.0])
        with pytest.raises(ValueError):
            ts.values[0] = 5.0

    def test_corpus_unique_ids(self):
        a = TimeSeries(id="a", values=[1.0, 2.0])
        with pytest.raises(DomainError):
            Corpus(name="c", series=(a, a))


class TestGaussianNoise:
    def test_zero_sd_gives_zeros(self):
        ts = gen_gaussian_noise(GeneratorConfig(n=100, seed=1, noise_sd=0.0))
        assert np.all(ts.values == 0.0)

    def test_deterministic(self):
        a = gen_gaussian_noise(GeneratorConfig(n=1000, seed=7))
        b = gen_gaussian_noise(GeneratorConfig(n=1000, seed=7))
        assert np.array_equal(a.values, b.values)

    def test_moments(self):
        # 5 sigma band around the standard error 1/sqrt(n) ~ 0.003
        ts = gen_gaussian_noise(GeneratorConfig(n=100_000, seed=3))
        assert abs(ts.values.mean()) < 0.02
        assert abs(ts.values.std(ddof=1) - 1.0) < 0.02

    def test_invalid_config(self):
        with pytest.raises(ConfigurationError):
            GeneratorConfig(n=1, seed=0)
        with pytest.raises(ConfigurationError):
            GeneratorConfig(n=10, seed=0, noise_sd=-0.5)


class TestNoisySinusoid:
    def test_multiples_of_pi(self):
        # t = [0, pi, 2pi, 3pi] -> 2 sin(2t) vanishes at every point
        ts = gen_noisy_sinusoid(GeneratorConfig(n=4, seed=1, noise_sd=0.0))
        assert np.all(np.abs(ts.values) < 1e-12)

    def test_quarter_grid_value(self):
        # t_1 = 3pi/4 -> 2 sin(3pi/2) = -2
        ts = gen_noisy_sinusoid(GeneratorConfig(n=5, seed=1, noise_sd=0.0))
        assert ts.values[1] == pytest.approx(-2.0, abs=1e-12)

    def test_seed_irrelevant_without_noise(self):
        a = gen_noisy_sinusoid(GeneratorConfig(n=100, seed=5, noise_sd=0.0))
        b = gen_noisy_sinusoid(GeneratorConfig(n=100, seed=6, noise_sd=0.0))
        assert np.array_equal(a.values, b.values)

    def test_matches_closed_form_exactly(self):
        cfg = GeneratorConfig(n=257, seed=0, noise_sd=0.0)
        ts = gen_noisy_sinusoid(cfg)
        t = cfg.t_max * np.arange(cfg.n) / (cfg.n - 1)
        expected = cfg.amplitude * np.sin(cfg.angular_freq * t)
        assert np.array_equal(ts.values, expected)

    def test_custom_amplitude_frequency(self):
        cfg = GeneratorConfig(
            n=9, seed=0, noise_sd=0.0, amplitude=3.0, angular_freq=1.0,
            t_max=2 * math.pi,
        )
        ts = gen_noisy_sinusoid(cfg)
        assert ts.values[2] == pytest.approx(3.0, abs=1e-12)  # sin(pi/2)


class TestDiverseCorpus:
    def test_shape_and_ids(self):
        corpus = gen_diverse_corpus(count=5, seed=1, length=100)
        assert len(corpus) == 5
        assert all(len(ts) == 100 for ts in corpus)
        assert len(set(corpus.ids)) == 5

    def test_deterministic(self):
        a = gen_diverse_corpus(count=100, seed=2, length=500)
        b = gen_diverse_corpus(count=100, seed=2, length=500)
        assert a.ids == b.ids
        for x, y in zip(a, b):
            assert np.array_equal(x.values, y.values)

    def test_family_diversity(self):
        corpus = gen_diverse_corpus(count=100, seed=2, length=500)
        families = {ts.id.split("-", 1)[1] for ts in corpus}
        assert len(families) >= 3

    def test_all_finite_and_sourced(self):
        corpus = gen_diverse_corpus(count=50, seed=4, length=128)
        for ts in corpus:
            assert np.isfinite(ts.values).all()
            assert ts.source == "synthetic-corpus"

    def test_count_validation(self):
        with pytest.raises(ConfigurationError):
            gen_diverse_corpus(count=0, seed=1, length=50)


class TestTruncate:
    def test_long_series_cut(self, random_series):
        ts = random_series(1200)
        cut = truncate(ts)
        assert len(cut) == 1000
        assert np.array_equal(cut.values, ts.values[:1000])

    def test_short_series_unchanged(self, random_series):
        ts = random_series(500)
        assert truncate(ts) is ts

    def test_boundary_unchanged(self, random_series):
        ts = random_series(1000)
        assert truncate(ts) is ts

    def test_idempotent(self, random_series):
        ts = random_series(1500)
        once = truncate(ts)
        twice = truncate(once)
        assert np.array_equal(once.values, twice.values)


class TestCorpusIO:
    def test_round_trip(self, tmp_path):
        corpus = gen_diverse_corpus(count=8, seed=3, length=64)
        save_corpus(corpus, tmp_path / "c")
        loaded = load_corpus(tmp_path / "c")
        assert loaded.ids == corpus.ids
        for a, b in zip(loaded, corpus):
            assert np.array_equal(a.values, b.values)

    def test_three_plain_files(self, tmp_path):
        for i in range(3):
            (tmp_path / f"s{i}.txt").write_text("1.0\n2.0\n3.0\n")
        corpus = load_corpus(tmp_path)
        assert len(corpus) == 3
        assert corpus.ids == ["s0", "s1", "s2"]

    def test_nan_series_skipped_with_warning(self, tmp_path):
        (tmp_path / "bad.txt").write_text("1.0, 2.0, NaN\n")
        (tmp_path / "good.txt").write_text("1.0\n2.0\n")
        with pytest.warns(UserWarning, match="bad"):
            corpus = load_corpus(tmp_path)
        assert corpus.ids == ["good"]

    def test_truncation_applied(self, tmp_path):
        (tmp_path / "long.txt").write_text(
            "\n".join(str(float(i)) for i in range(4000)) + "\n"
        )
        corpus = load_corpus(tmp_path)
        assert len(corpus.series[0]) == 1000

    def test_comments_and_blank_lines(self, tmp_path):
        (tmp_path / "c.txt").write_text("# header\n1.5\n\n2.5\n# tail\n3.5\n")
        corpus = load_corpus(tmp_path)
        assert np.array_equal(corpus.series[0].values, [1.5, 2.5, 3.5])

    def test_duplicate_stems_suffixed(self, tmp_path):
        (tmp_path / "a.txt").write_text("1.0\n2.0\n")
        (tmp_path / "a.dat").write_text("3.0\n4.0\n")
        corpus = load_corpus(tmp_path)
        assert sorted(corpus.ids) == ["a", "a_2"]

    def test_empty_dir_raises(self, tmp_path):
        with pytest.raises(EmptyCorpusError):
            load_corpus(tmp_path)

    def test_missing_path_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_corpus(tmp_path / "nope")

    def test_unparseable_token_skips_series(self, tmp_path):
        (tmp_path / "bad.txt").write_text("1.0\nhello\n")
        (tmp_path / "ok.txt").write_text("1.0\n2.0\n")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            corpus = load_corpus(tmp_path)
        assert corpus.ids == ["ok"]
