#!/usr/bin/env python3
"""Adapter for the tsfresh feature set (comprehensive parameters).

Usage: adapt_tsfresh.py <corpus_dir> <out_csv>
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from adapter_core import CapabilityError, adapter_main


def prepare():
    try:
        import pandas as pd
        from tsfresh import extract_features
        from tsfresh.feature_extraction import ComprehensiveFCParameters
    except ImportError as exc:
        raise CapabilityError("tsfresh", str(exc)) from None
    try:
        from importlib.metadata import version
        lib_version = version("tsfresh")
    except Exception:
        lib_version = "unknown"

    params = ComprehensiveFCParameters()

    def extract(values):
        frame = pd.DataFrame({
            "id": 0,
            "time": range(len(values)),
            "value": values,
        })
        row = extract_features(
            frame, column_id="id", column_sort="time",
            default_fc_parameters=params, disable_progressbar=True,
            n_jobs=0,
        )
        return {name: float(row.iloc[0][name]) for name in row.columns}

    return lib_version, extract


if __name__ == "__main__":
    sys.exit(adapter_main(sys.argv[1:], "tsfresh", prepare))
