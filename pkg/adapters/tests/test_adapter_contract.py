"""Adapter contract: emitted files must flow through the analysis toolkit.

A stub extractor stands in for the external libraries (none are installed
in the test environment); the real adapter scripts are checked for their
capability-error behavior.
"""

import subprocess
import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

from adapter_core import (
    AdapterError,
    AdapterManifest,
    CapabilityError,
    read_corpus_dir,
    run_adapter,
)

from tsfsb import (
    extract_set,
    gen_diverse_corpus,
    load_corpus,
    overlap_S,
    read_interchange,
    run_pipeline,
    save_corpus,
)

ADAPTERS_DIR = Path(__file__).parent.parent


def _stub_extract(values: np.ndarray) -> dict[str, float]:
    """Five externally-styled statistics; one crashes on a marker series."""
    out = {
        "loc": float(np.mean(values)),
        "spread": float(np.ptp(values)),
        "first": float(values[0]),
        "energy": float(np.sum(values ** 2)),
    }
    # a feature that fails on one specific input, like a fragile
    # third-party calculator would
    if values[0] == 0.0:
        pass  # key absent -> missing cell
    else:
        out["fragile"] = float(np.log(np.abs(values[0])))
    return out


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("adapter") / "corpus"
    corpus = gen_diverse_corpus(count=10, seed=21, length=120)
    save_corpus(corpus, root)
    return root


@pytest.fixture(scope="module")
def emitted(corpus_dir, tmp_path_factory):
    out_csv = tmp_path_factory.mktemp("adapter_out") / "stub.csv"
    manifest = run_adapter("stubset", "9.9", _stub_extract, corpus_dir, out_csv)
    return manifest, out_csv


class TestCorpusReading:
    def test_sorted_ids(self, corpus_dir):
        pairs = read_corpus_dir(corpus_dir)
        ids = [sid for sid, _ in pairs]
        assert ids == sorted(ids)
        assert len(pairs) == 10

    def test_unusable_series_skipped(self, tmp_path):
        (tmp_path / "bad.txt").write_text("1.0\nNaN\n")
        (tmp_path / "ok.txt").write_text("1.0\n2.0\n")
        with pytest.warns(UserWarning):
            pairs = read_corpus_dir(tmp_path)
        assert [sid for sid, _ in pairs] == ["ok"]

    def test_empty_dir_rejected(self, tmp_path):
        with pytest.raises(AdapterError):
            read_corpus_dir(tmp_path)


class TestEmittedFile:
    def test_manifest_fields(self, emitted, corpus_dir):
        manifest, out_csv = emitted
        assert isinstance(manifest, AdapterManifest)
        assert manifest.set_id == "stubset"
        assert manifest.feature_count == 5
        assert manifest.corpus_path == str(corpus_dir)
        assert manifest.emitted_path == str(out_csv)

    def test_parses_via_read_interchange(self, emitted):
        _, out_csv = emitted
        m = read_interchange(out_csv)
        assert m.set_id == "stubset"
        assert (m.n_series, m.n_features) == (10, 5)
        assert m.series_ids == sorted(m.series_ids)
        assert not m.normalized

    def test_missing_cells_are_nan_literal(self, corpus_dir, tmp_path):
        # force one marker series whose fragile feature goes missing
        marker = tmp_path / "corpus2"
        marker.mkdir()
        for f in Path(corpus_dir).iterdir():
            (marker / f.name).write_text(f.read_text())
        (marker / "zzmarker.txt").write_text("0.0\n1.0\n2.0\n")
        out_csv = tmp_path / "m.csv"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            run_adapter("stubset", "9.9", _stub_extract, marker, out_csv)
        text = out_csv.read_text()
        assert "NaN" in text
        m = read_interchange(out_csv)
        row = m.values[m.series_ids.index("zzmarker")]
        assert np.isnan(row[m.feature_names.index("fragile")])
        assert np.isfinite(row[m.feature_names.index("loc")])

    def test_survives_pipeline_and_overlap(self, emitted, corpus_dir):
        _, out_csv = emitted
        external = read_interchange(out_csv)
        corpus = load_corpus(corpus_dir)
        distilled = extract_set("distilled-22", corpus)
        # align row order: adapter rows are sorted by id
        assert external.series_ids == distilled.series_ids
        (ext_f, dist_f), _ = run_pipeline([external, distilled])
        result = overlap_S(ext_f, dist_f)
        assert 0.0 <= result.S <= 1.0
        assert np.isfinite(result.S)


class TestAdapterScripts:
    @pytest.mark.parametrize("script,dependency", [
        ("adapt_tsfresh.py", "tsfresh"),
        ("adapt_tsfel.py", "tsfel"),
        ("adapt_pycatch22.py", "pycatch22"),
    ])
    def test_missing_library_capability_error(self, script, dependency,
                                              corpus_dir, tmp_path):
        try:
            __import__(dependency)
            pytest.skip(f"{dependency} installed; capability path untestable")
        except ImportError:
            pass
        proc = subprocess.run(
            [sys.executable, str(ADAPTERS_DIR / script),
             str(corpus_dir), str(tmp_path / "out.csv")],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1
        assert dependency in proc.stderr

    def test_usage_error(self):
        proc = subprocess.run(
            [sys.executable, str(ADAPTERS_DIR / "adapt_pycatch22.py")],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1
        assert "usage" in proc.stderr


class TestCapabilityError:
    def test_names_dependency(self):
        err = CapabilityError("somelib", "No module named 'somelib'")
        assert "somelib" in str(err)


def test_acceptance_adapter_contract(emitted, corpus_dir):
    """Release criterion for the adapter lane, one pass/fail line."""
    _, out_csv = emitted
    external = read_interchange(out_csv)
    corpus = load_corpus(corpus_dir)
    (ext_f, dist_f), _ = run_pipeline(
        [external, extract_set("distilled-22", corpus)]
    )
    s = overlap_S(ext_f, dist_f).S
    parses = external.n_series == 10
    complete = not np.isnan(ext_f.values).any()
    ok = parses and complete and 0.0 <= s <= 1.0
    print(f"ACCEPTANCE adapter-contract: {'PASS' if ok else 'FAIL'}  "
          f"[S={s:.3f}]")
    assert ok
