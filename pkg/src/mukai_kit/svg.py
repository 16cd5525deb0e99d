"""Static SVG rendering of a wall scan: one labelled vertical line per hit."""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from .scalars import fmt_rational, to_rational

WIDTH, HEIGHT = 800, 320
LEFT, RIGHT, TOP, BOTTOM = 60, 40, 40, 60


def _x(t2: Fraction, lo: Fraction, hi: Fraction) -> str:
    # log-scaled horizontal position; floats are used for drawing only
    span = math.log(float(hi)) - math.log(float(lo))
    frac = 0.0 if span == 0 else (math.log(float(t2)) - math.log(float(lo))) / span
    return f"{LEFT + frac * (WIDTH - LEFT - RIGHT):.3f}"


def render_scan(hits, t_max=None) -> str:
    """SVG text for ``hits``, a list of ``{"t2": "p/q", "key": [...]}`` dicts."""
    t2s = [to_rational(h["t2"]) for h in hits]
    lo = Fraction(1)
    hi = max([lo * 10] + t2s + ([to_rational(t_max) ** 2] if t_max is not None else []))
    y_axis = HEIGHT - BOTTOM
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line class="axis" x1="{LEFT}" y1="{y_axis}" x2="{WIDTH - RIGHT}" y2="{y_axis}" stroke="black"/>',
        f'<text x="{(WIDTH) // 2}" y="{HEIGHT - 15}" text-anchor="middle" font-size="13">t^2 (log scale)</text>',
    ]
    for tick in (lo, hi):
        x = _x(tick, lo, hi)
        out.append(f'<line class="tick" x1="{x}" y1="{y_axis}" x2="{x}" y2="{y_axis + 6}" stroke="black"/>')
        out.append(
            f'<text class="tick-label" x="{x}" y="{y_axis + 20}" text-anchor="middle" font-size="11">'
            f"{escape(fmt_rational(tick))}</text>"
        )
    for i, (h, t2) in enumerate(zip(hits, t2s)):
        x = _x(t2, lo, hi)
        label = "(" + ",".join(str(c) for c in h["key"]) + ")"
        y_text = TOP - 10 + 14 * (i % 3)
        out.append(f'<line class="wall" x1="{x}" y1="{TOP + 30}" x2="{x}" y2="{y_axis}" stroke="#b22222"/>')
        out.append(
            f'<text class="wall-label" x="{x}" y="{y_text + 30}" text-anchor="middle" font-size="10">'
            f"{escape(label)} t^2={escape(fmt_rational(t2))}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(report: dict, path) -> Path:
    """Write the scan diagram of a ``walls-scan`` report to ``path``."""
    if report.get("command") != "walls-scan":
        raise ValueError("emit_plot needs a walls-scan report")
    results = report["results"]
    svg = render_scan(results["hits"], report["inputs"].get("t_max"))
    path = Path(path)
    path.write_text(svg, encoding="utf-8")
    return path
