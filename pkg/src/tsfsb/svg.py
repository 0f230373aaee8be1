"""Deterministic SVG plots, no plotting runtime dependency.

Output contains no timestamps or generated ids, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import math

_PALETTE = [
    "#1b7837", "#e08214", "#762a83", "#de77ae", "#7fbc41",
    "#fdb863", "#8c510a", "#35978f",
]

_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 30, 55


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".") if v else "0"


def _log_ticks(lo: float, hi: float) -> list[float]:
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    decades = [10.0 ** e for e in range(first, last + 1)]
    in_range = [t for t in decades if lo <= t <= hi]
    if len(in_range) >= 2:
        return decades
    # less than a decade of span: fall back to a 1-2-5 sequence
    return [
        m * 10.0 ** e for e in range(first, last + 1) for m in (1.0, 2.0, 5.0)
    ]


def _si(v: float) -> str:
    if v == 0:
        return "0"
    exp = math.floor(math.log10(abs(v)))
    if -3 <= exp <= 3 and v == round(v, 6):
        return f"{v:g}"
    return f"1e{exp}" if v == 10.0 ** exp else f"{v:.2g}"


class _Canvas:
    def __init__(self, title: str, x_label: str, y_label: str):
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
            f'height="{_H}" viewBox="0 0 {_W} {_H}">',
            f'<rect width="{_W}" height="{_H}" fill="white"/>',
            f'<text x="{_W / 2}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>',
            f'<text x="{_W / 2}" y="{_H - 8}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{x_label}</text>',
            f'<text x="14" y="{_H / 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 14 {_H / 2})">{y_label}</text>',
            f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
            f'height="{_H - _MT - _MB}" fill="none" stroke="#888"/>',
        ]

    def finish(self) -> str:
        self.parts.append("</svg>")
        return "\n".join(self.parts) + "\n"


def _scale(lo, hi, log):
    span_px = None

    def to_px(v, px0, px1):
        if log:
            f = (math.log10(v) - math.log10(lo)) / (
                math.log10(hi) - math.log10(lo))
        else:
            f = (v - lo) / (hi - lo)
        return px0 + f * (px1 - px0)

    return to_px


def line_chart(
    curves: list[tuple[str, list[float], list[float]]],
    title: str,
    x_label: str,
    y_label: str,
    log_x: bool = False,
    log_y: bool = False,
    bands: list[tuple[list[float], list[float]]] | None = None,
    hline: float | None = None,
) -> str:
    """Multi-curve line chart; optional per-curve (lo, hi) bands and a
    horizontal reference line."""
    xs_all = [x for _, xs, _ in curves for x in xs]
    ys_all = [y for _, _, ys in curves for y in ys if not math.isnan(y)]
    if bands:
        for lo_c, hi_c in bands:
            ys_all += [v for v in lo_c + hi_c if not math.isnan(v)]
    if hline is not None:
        ys_all.append(hline)
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    if log_y:
        y_lo = max(y_lo, 1e-12)
        ys_all = [v for v in ys_all if v > 0]
        y_lo = min(ys_all)
    if x_lo == x_hi:
        x_hi = x_lo + 1
    if y_lo == y_hi:
        y_hi = y_lo + 1

    sx = _scale(x_lo, x_hi, log_x)
    sy = _scale(y_lo, y_hi, log_y)

    def px(v):
        return sx(v, _ML, _W - _MR)

    def py(v):
        return sy(v, _H - _MB, _MT)

    c = _Canvas(title, x_label, y_label)

    x_ticks = _log_ticks(x_lo, x_hi) if log_x else [
        x_lo + i * (x_hi - x_lo) / 5 for i in range(6)]
    for t in x_ticks:
        if not x_lo <= t <= x_hi:
            continue
        c.parts.append(
            f'<line x1="{px(t):.1f}" y1="{_H - _MB}" x2="{px(t):.1f}" '
            f'y2="{_H - _MB + 5}" stroke="#444"/>')
        c.parts.append(
            f'<text x="{px(t):.1f}" y="{_H - _MB + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{_si(t)}</text>')
    y_ticks = _log_ticks(y_lo, y_hi) if log_y else [
        y_lo + i * (y_hi - y_lo) / 5 for i in range(6)]
    for t in y_ticks:
        if not y_lo <= t <= y_hi:
            continue
        c.parts.append(
            f'<line x1="{_ML - 5}" y1="{py(t):.1f}" x2="{_ML}" '
            f'y2="{py(t):.1f}" stroke="#444"/>')
        c.parts.append(
            f'<text x="{_ML - 8}" y="{py(t):.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{_si(t)}</text>')

    if hline is not None:
        c.parts.append(
            f'<line x1="{_ML}" y1="{py(hline):.1f}" x2="{_W - _MR}" '
            f'y2="{py(hline):.1f}" stroke="#999" stroke-dasharray="5,4"/>')

    for i, (label, xs, ys) in enumerate(curves):
        color = _PALETTE[i % len(_PALETTE)]
        if bands and i < len(bands):
            lo_c, hi_c = bands[i]
            pts_up = " ".join(
                f"{px(x):.1f},{py(v):.1f}" for x, v in zip(xs, hi_c)
                if not math.isnan(v))
            pts_dn = " ".join(
                f"{px(x):.1f},{py(v):.1f}"
                for x, v in reversed(list(zip(xs, lo_c)))
                if not math.isnan(v))
            if pts_up and pts_dn:
                c.parts.append(
                    f'<polygon points="{pts_up} {pts_dn}" fill="{color}" '
                    f'opacity="0.18"/>')
        pts = " ".join(
            f"{px(x):.1f},{py(y):.1f}" for x, y in zip(xs, ys)
            if not math.isnan(y))
        c.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.8"/>')
        for x, y in zip(xs, ys):
            if not math.isnan(y):
                c.parts.append(
                    f'<circle cx="{px(x):.1f}" cy="{py(y):.1f}" r="2.6" '
                    f'fill="{color}"/>')
        c.parts.append(
            f'<text x="{_W - _MR - 6}" y="{_MT + 16 + 14 * i}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11" '
            f'fill="{color}">{label}</text>')
    return c.finish()


def heatmap(
    row_ids: list[str],
    col_ids: list[str],
    grid,
    title: str,
    row_label: str = "benchmark set",
    col_label: str = "test set",
) -> str:
    """Annotated heatmap (values rendered to 2 decimals)."""
    n_r, n_c = len(row_ids), len(col_ids)
    cw = (_W - _ML - _MR) / n_c
    ch = (_H - _MT - _MB) / n_r
    c = _Canvas(title, col_label, row_label)
    for i in range(n_r):
        for j in range(n_c):
            v = float(grid[i][j])
            # white -> blue ramp
            t = min(max(v, 0.0), 1.0)
            r = round(255 - 180 * t)
            g = round(255 - 120 * t)
            x0 = _ML + j * cw
            y0 = _MT + i * ch
            c.parts.append(
                f'<rect x="{x0:.1f}" y="{y0:.1f}" width="{cw:.1f}" '
                f'height="{ch:.1f}" fill="rgb({r},{g},255)" stroke="#ccc"/>')
            dark = t > 0.65
            c.parts.append(
                f'<text x="{x0 + cw / 2:.1f}" y="{y0 + ch / 2 + 4:.1f}" '
                f'text-anchor="middle" font-family="sans-serif" '
                f'font-size="12" fill="{"white" if dark else "black"}">'
                f"{v:.2f}</text>")
    for j, cid in enumerate(col_ids):
        c.parts.append(
            f'<text x="{_ML + (j + 0.5) * cw:.1f}" y="{_H - _MB + 16}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{cid}</text>')
    for i, rid in enumerate(row_ids):
        c.parts.append(
            f'<text x="{_ML - 6}" y="{_MT + (i + 0.5) * ch + 4:.1f}" '
            f'text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{rid}</text>')
    return c.finish()
