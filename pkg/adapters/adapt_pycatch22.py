#!/usr/bin/env python3
"""Adapter for the pycatch22 feature set.

Usage: adapt_pycatch22.py <corpus_dir> <out_csv>
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from adapter_core import CapabilityError, adapter_main


def prepare():
    try:
        import pycatch22
    except ImportError as exc:
        raise CapabilityError("pycatch22", str(exc)) from None
    try:
        from importlib.metadata import version
        lib_version = version("pycatch22")
    except Exception:
        lib_version = "unknown"

    def extract(values):
        result = pycatch22.catch22_all(values.tolist())
        return dict(zip(result["names"], result["values"]))

    return lib_version, extract


if __name__ == "__main__":
    sys.exit(adapter_main(sys.argv[1:], "pycatch22", prepare))
