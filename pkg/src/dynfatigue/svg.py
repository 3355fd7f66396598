"""Standalone SVG 1.1 line charts, no plotting library required."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

WIDTH = 800
HEIGHT = 500
MARGIN_LEFT = 80
MARGIN_RIGHT = 180
MARGIN_TOP = 50
MARGIN_BOTTOM = 60


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    magnitude = 10 ** math.floor(math.log10(raw))
    step = min((m * magnitude for m in (1, 2, 2.5, 5, 10) if m * magnitude >= raw), default=raw)
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + step * 1e-9:
        ticks.append(round(v, 12))
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _bounds(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        pad = abs(hi) * 0.1 or 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def line_chart(
    title: str,
    x_label: str,
    y_label: str,
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    markers: Sequence[tuple[str, Sequence[float], Sequence[float]]] = (),
) -> str:
    """Render lines (and optional scatter markers) to an SVG document string."""
    xs = [x for _, sx, _ in list(series) + list(markers) for x in sx]
    ys = [y for _, _, sy in list(series) + list(markers) for y in sy]
    if not xs:
        raise ValueError("nothing to plot")
    x_lo, x_hi = (min(xs), max(xs)) if max(xs) > min(xs) else _bounds(xs)
    y_lo, y_hi = _bounds(ys)

    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def px(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * (right - left)

    def py(y: float) -> float:
        return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<text x="{(left + right) / 2:.1f}" y="30" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{_escape(title)}</text>',
    ]

    for tx in _nice_ticks(x_lo, x_hi):
        x = px(tx)
        out.append(f'<line x1="{_fmt(x)}" y1="{top}" x2="{_fmt(x)}" y2="{bottom}" stroke="#eeeeee"/>')
        out.append(
            f'<text x="{_fmt(x)}" y="{bottom + 18}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{tx:g}</text>'
        )
    for ty in _nice_ticks(y_lo, y_hi):
        y = py(ty)
        out.append(f'<line x1="{left}" y1="{_fmt(y)}" x2="{right}" y2="{_fmt(y)}" stroke="#eeeeee"/>')
        out.append(
            f'<text x="{left - 8}" y="{_fmt(y + 4)}" text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{ty:g}</text>'
        )
    out.append(
        f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
        f'fill="none" stroke="#333333"/>'
    )
    out.append(
        f'<text x="{(left + right) / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_escape(x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{(top + bottom) / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 20 {(top + bottom) / 2:.1f})">{_escape(y_label)}</text>'
    )

    legend_y = top + 10
    for i, (name, sx, sy) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(sx, sy))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(
            f'<line x1="{right + 15}" y1="{legend_y}" x2="{right + 35}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{right + 40}" y="{legend_y + 4}" font-family="sans-serif" '
            f'font-size="12">{_escape(name)}</text>'
        )
        legend_y += 20
    for j, (name, sx, sy) in enumerate(markers):
        color = COLORS[(len(series) + j) % len(COLORS)]
        for x, y in zip(sx, sy):
            out.append(f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" r="4" fill="{color}"/>')
        out.append(f'<circle cx="{right + 25}" cy="{legend_y}" r="4" fill="{color}"/>')
        out.append(
            f'<text x="{right + 40}" y="{legend_y + 4}" font-family="sans-serif" '
            f'font-size="12">{_escape(name)}</text>'
        )
        legend_y += 20

    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_line_chart(path: Path, *args, **kwargs) -> None:
    Path(path).write_text(line_chart(*args, **kwargs), encoding="utf-8")
