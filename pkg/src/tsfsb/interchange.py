"""Interchange file format for feature matrices.

UTF-8 CSV: first header cell ``id``, remaining headers ``<set_id>.<name>``;
missing values are the literal token ``NaN``; numbers are written in
shortest round-trip decimal form. A sidecar manifest
``<file>.manifest.json`` records set_id, shape, the normalized flag and the
writing tool version. Lines starting with '#' before the header are
ignored on read (the CLI uses one for its provenance record).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ParseError, SchemaError
from .matrix import FeatureMatrix

_NAN_TOKEN = "NaN"


def _format_value(v: float) -> str:
    if math.isnan(v):
        return _NAN_TOKEN
    if not math.isfinite(v):
        raise SchemaError("interchange values must be finite or missing")
    return repr(float(v))


def write_interchange(
    m: FeatureMatrix, path, provenance: str | None = None
) -> None:
    """Write matrix + manifest; lossless under read_interchange."""
    out = Path(path)
    # the header grammar is <set_id>.<name>: the set id must be dot-free
    if not m.set_id or any(ch in m.set_id for ch in ".,\n\r"):
        raise SchemaError(f"set id {m.set_id!r} not representable in CSV")
    for name in m.feature_names:
        if any(ch in name for ch in ",\n\r"):
            raise SchemaError(f"feature name {name!r} not representable in CSV")
    for sid in m.series_ids:
        if any(ch in sid for ch in ",\n\r"):
            raise SchemaError(f"series id {sid!r} not representable in CSV")
    lines = []
    if provenance is not None:
        lines.append(f"# {provenance}")
    header = ["id"] + [f"{m.set_id}.{name}" for name in m.feature_names]
    lines.append(",".join(header))
    for sid, row in zip(m.series_ids, m.values):
        lines.append(",".join([sid] + [_format_value(v) for v in row]))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest = {
        "set_id": m.set_id,
        "n_series": m.n_series,
        "n_features": m.n_features,
        "normalized": m.normalized,
        "tool_version": __version__,
    }
    Path(str(out) + ".manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def read_interchange(path) -> FeatureMatrix:
    """Parse an interchange CSV (and its manifest, when present)."""
    src = Path(path)
    text = src.read_text(encoding="utf-8")
    lines = text.splitlines()

    header_idx = None
    for i, line in enumerate(lines):
        if line.strip() and not line.startswith("#"):
            header_idx = i
            break
    if header_idx is None:
        raise ParseError("no header row found", line=1)

    header = lines[header_idx].split(",")
    if header[0] != "id":
        raise ParseError(
            f"first header cell must be 'id', got {header[0]!r}",
            line=header_idx + 1,
        )
    if len(header) < 2:
        raise ParseError("no feature columns", line=header_idx + 1)

    set_id = None
    names = []
    for cell in header[1:]:
        if "." not in cell:
            raise ParseError(
                f"column {cell!r} is not of the form <set_id>.<name>",
                line=header_idx + 1,
            )
        prefix, name = cell.split(".", 1)
        if set_id is None:
            set_id = prefix
        elif prefix != set_id:
            raise SchemaError(
                f"mixed set ids in header: {set_id!r} and {prefix!r}"
            )
        if name in names:
            raise SchemaError(f"duplicate feature column {cell!r}")
        names.append(name)

    series_ids: list[str] = []
    rows: list[list[float]] = []
    for lineno0 in range(header_idx + 1, len(lines)):
        line = lines[lineno0]
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise ParseError(
                f"expected {len(header)} cells, got {len(cells)}",
                line=lineno0 + 1,
            )
        sid = cells[0]
        if sid in series_ids:
            raise SchemaError(f"duplicate series id {sid!r}")
        row = []
        for cell in cells[1:]:
            if cell == _NAN_TOKEN:
                row.append(math.nan)
                continue
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(
                    f"unparseable value {cell!r}", line=lineno0 + 1
                ) from None
            if not math.isfinite(v):
                raise ParseError(
                    f"non-finite value {cell!r} (use {_NAN_TOKEN} for missing)",
                    line=lineno0 + 1,
                )
            row.append(v)
        series_ids.append(sid)
        rows.append(row)

    if not rows:
        raise ParseError("no data rows", line=header_idx + 2)

    normalized = False
    manifest_path = Path(str(src) + ".manifest.json")
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        if manifest.get("set_id") not in (None, set_id):
            raise SchemaError(
                f"manifest set_id {manifest['set_id']!r} does not match "
                f"header set id {set_id!r}"
            )
        normalized = bool(manifest.get("normalized", False))

    return FeatureMatrix(
        set_id=set_id,
        series_ids=series_ids,
        feature_names=names,
        values=np.array(rows, dtype=np.float64),
        normalized=normalized,
    )
