#!/usr/bin/env python3
"""Adapter for the TSFEL feature set (all domains).

Usage: adapt_tsfel.py <corpus_dir> <out_csv>
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from adapter_core import CapabilityError, adapter_main


def prepare():
    try:
        import pandas as pd
        import tsfel
    except ImportError as exc:
        raise CapabilityError("tsfel", str(exc)) from None
    try:
        from importlib.metadata import version
        lib_version = version("tsfel")
    except Exception:
        lib_version = "unknown"

    cfg = tsfel.get_features_by_domain()

    def extract(values):
        row = tsfel.time_series_features_extractor(
            cfg, pd.DataFrame({"value": values}), verbose=0,
        )
        return {name: float(row.iloc[0][name]) for name in row.columns}

    return lib_version, extract


if __name__ == "__main__":
    sys.exit(adapter_main(sys.argv[1:], "tsfel", prepare))
