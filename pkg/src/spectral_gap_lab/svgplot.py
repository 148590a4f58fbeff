"""Minimal log-log line charts written directly as SVG."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _ticks(lo, hi):
    return list(range(math.floor(lo), math.ceil(hi) + 1))


def loglog_svg(series: dict, title: str = "", xlabel: str = "L", ylabel: str = "",
               width: int = 640, height: int = 480) -> str:
    """One polyline per series; non-positive and missing points are skipped.

    ``series`` maps a label to a pair of sequences (xs, ys).
    """
    clean = {}
    for name, (xs, ys) in series.items():
        pts = [(math.log10(x), math.log10(y)) for x, y in zip(xs, ys)
               if x is not None and y is not None and x > 0 and y > 0]
        if pts:
            clean[name] = pts
    left, right, top, bottom = 80, 150, 40, 60
    pw, ph = width - left - right, height - top - bottom
    allpts = [p for pts in clean.values() for p in pts] or [(0.0, 0.0), (1.0, 1.0)]
    x0, x1 = min(p[0] for p in allpts), max(p[0] for p in allpts)
    y0, y1 = min(p[1] for p in allpts), max(p[1] for p in allpts)
    if x1 - x0 < 1e-12:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def sx(u):
        return left + (u - x0) / (x1 - x0) * pw

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" data-log10-x="{x0!r} {x1!r}" '
           f'data-log10-y="{y0!r} {y1!r}">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
           f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for t in _ticks(x0, x1):
        if x0 <= t <= x1:
            out.append(f'<line x1="{sx(t):.2f}" y1="{top + ph}" x2="{sx(t):.2f}" y2="{top + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{sx(t):.2f}" y="{top + ph + 20}" text-anchor="middle" font-size="12">1e{t}</text>')
    for t in _ticks(y0, y1):
        if y0 <= t <= y1:
            out.append(f'<line x1="{left - 5}" y1="{sy(t):.2f}" x2="{left}" y2="{sy(t):.2f}" stroke="black"/>')
            out.append(f'<text x="{left - 8}" y="{sy(t) + 4:.2f}" text-anchor="end" font-size="12">1e{t}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 15}" text-anchor="middle" font-size="14">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{top + ph / 2:.1f}" text-anchor="middle" font-size="14" '
               f'transform="rotate(-90 20 {top + ph / 2:.1f})">{escape(ylabel)}</text>')
    for i, (name, pts) in enumerate(clean.items()):
        color = COLORS[i % len(COLORS)]
        coords = " ".join(f"{sx(u):.2f},{sy(v):.2f}" for u, v in pts)
        out.append(f'<polyline class="series" data-label="{escape(name)}" fill="none" '
                   f'stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = top + 16 * i + 10
        out.append(f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
