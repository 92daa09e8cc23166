"""Deterministic SVG drawings of instances: the target as a baseline, each
uncertain segment as a row holding its two alternative bars."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .core import Interval, ScInstance

WIDTH = 800
MARGIN = 40
ROW = 22
BAR = 6


def decimal(x: Fraction, digits: int = 6) -> str:
    """Exact rounding of a rational to at most ``digits`` decimals."""
    scaled = round(x * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** digits)
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{frac_s}" if frac_s else f"{sign}{whole}"


def render_svg(inst: ScInstance) -> str:
    t = inst.target
    span = t.length if t.length else Fraction(1)
    ppu = Fraction(WIDTH - 2 * MARGIN) / span
    x = lambda v: decimal(MARGIN + (v - t.lo) * ppu)
    height = MARGIN * 2 + ROW * (len(inst.segments) + 1)
    base_y = height - MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="10">',
        f'<line x1="{x(t.lo)}" y1="{base_y}" x2="{x(t.hi)}" y2="{base_y}" stroke="black" stroke-width="2"/>',
        f'<text x="{x(t.lo)}" y="{base_y + 14}">{escape(str(t.lo))}</text>',
        f'<text x="{x(t.hi)}" y="{base_y + 14}" text-anchor="end">{escape(str(t.hi))}</text>',
    ]

    def bar(iv: Interval, y: int, color: str) -> str:
        w = decimal(max((iv.hi - iv.lo) * ppu, Fraction(1)))
        return f'<rect x="{x(iv.lo)}" y="{y}" width="{w}" height="{BAR}" fill="{color}"/>'

    for k, seg in enumerate(inst.segments):
        y = base_y - ROW * (k + 1)
        label = escape(seg.label or f"s{k}")
        out.append(f'<g id="seg{k}">')
        out.append(bar(seg.first, y - BAR, "#1f77b4"))
        out.append(bar(seg.second, y + 1, "#ff7f0e"))
        out.append(f'<text x="{MARGIN - 4}" y="{y + 3}" text-anchor="end">{label}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
