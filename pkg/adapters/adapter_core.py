"""Shared machinery for the feature-set adapter scripts.

An adapter walks a corpus directory (plain-text series files, one value
per line, id = file stem), runs one external feature-extraction library
over every series and writes the resulting matrix in the interchange CSV
format (header ``id,<set_id>.<name>,...``; missing cells as the literal
``NaN``; shortest round-trip decimals) plus a ``.manifest.json`` sidecar.

Adapters never normalize or filter; they emit raw values so the analysis
pipeline downstream stays the single source of truth for cleaning.

Exit codes mirror the main CLI: 0 success, 1 domain/validation error
(including a missing extraction library), 2 I/O error.
"""

from __future__ import annotations

import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

ADAPTER_VERSION = "0.1.0"


class AdapterError(Exception):
    pass


class CapabilityError(AdapterError):
    """The extraction library backing this adapter is not importable."""

    def __init__(self, dependency: str, detail: str = ""):
        self.dependency = dependency
        message = f"missing dependency: {dependency}"
        if detail:
            message += f" ({detail})"
        message += f"; install {dependency!r} to use this adapter"
        super().__init__(message)


@dataclass(frozen=True)
class AdapterManifest:
    set_id: str
    library_version: str
    feature_count: int
    corpus_path: str
    emitted_path: str


def read_corpus_dir(path) -> list[tuple[str, np.ndarray]]:
    """(series id, values) pairs in sorted-id order.

    Unusable files (non-finite or unparseable values, fewer than 2
    samples) are skipped with a warning.
    """
    root = Path(path)
    if not root.is_dir():
        raise NotADirectoryError(f"corpus path is not a directory: {root}")
    out = []
    seen: dict[str, int] = {}
    for f in sorted(root.iterdir()):
        if not f.is_file() or f.name.startswith(".") or f.suffix == ".json":
            continue
        values: list[float] = []
        usable = True
        for line in f.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for token in line.replace(",", " ").split():
                try:
                    v = float(token)
                except ValueError:
                    usable = False
                    break
                if not math.isfinite(v):
                    usable = False
                    break
                values.append(v)
            if not usable:
                break
        if not usable or len(values) < 2:
            warnings.warn(f"{f.name}: skipped (unusable series)")
            continue
        stem = f.stem
        if stem in seen:
            seen[stem] += 1
            stem = f"{stem}_{seen[f.stem]}"
        else:
            seen[stem] = 1
        out.append((stem, np.asarray(values, dtype=np.float64)))
    if not out:
        raise AdapterError(f"no usable series under {root}")
    out.sort(key=lambda pair: pair[0])
    return out


def _format(v: float) -> str:
    return "NaN" if (v is None or math.isnan(v)) else repr(float(v))


def run_adapter(
    set_id: str,
    library_version: str,
    extract: Callable[[np.ndarray], dict[str, float]],
    corpus_dir,
    out_csv,
) -> AdapterManifest:
    """Extract every series and emit the interchange CSV + manifest.

    ``extract`` maps one value array to an ordered name -> value mapping;
    a raised exception marks the whole row missing, an absent key marks
    that cell missing. Column order follows first appearance.
    """
    series = read_corpus_dir(corpus_dir)
    names: list[str] = []
    rows: list[dict[str, float]] = []
    for sid, values in series:
        try:
            feats = extract(values)
        except Exception as exc:  # library failures become missing rows
            warnings.warn(f"{sid}: extraction failed ({exc}); row is missing")
            feats = {}
        for name in feats:
            if name not in names:
                names.append(name)
        rows.append(feats)
    if not names:
        raise AdapterError("extraction produced no features for any series")

    lines = [",".join(["id"] + [f"{set_id}.{n}" for n in names])]
    for (sid, _), feats in zip(series, rows):
        cells = [sid] + [_format(feats.get(n, math.nan)) for n in names]
        lines.append(",".join(cells))
    out = Path(out_csv)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest = {
        "set_id": set_id,
        "n_series": len(series),
        "n_features": len(names),
        "normalized": False,
        "tool_version": ADAPTER_VERSION,
        "library_version": library_version,
    }
    Path(str(out) + ".manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    return AdapterManifest(
        set_id=set_id,
        library_version=library_version,
        feature_count=len(names),
        corpus_path=str(corpus_dir),
        emitted_path=str(out),
    )


def adapter_main(argv, set_id: str, prepare) -> int:
    """Entry point shared by the adapt_<set>.py scripts.

    ``prepare`` imports the backing library and returns
    (library_version, extract_fn); it raises CapabilityError when the
    library is absent.
    """
    if len(argv) != 2:
        print(f"usage: adapt_{set_id}.py <corpus_dir> <out_csv>",
              file=sys.stderr)
        return 1
    corpus_dir, out_csv = argv
    try:
        version, extract = prepare()
        manifest = run_adapter(set_id, version, extract, corpus_dir, out_csv)
    except AdapterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    print(f"{manifest.set_id}: {manifest.feature_count} features "
          f"(library {manifest.library_version}) -> {manifest.emitted_path}")
    return 0
