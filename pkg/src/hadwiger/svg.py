"""Deterministic SVG rendering of planar families and their certificates."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .certificates import OpenCase, RadonViolation, TransversalWitness
from .exact import OrientedHyperplane
from .transversal import ColoredFamily

CANVAS = 600
MARGIN = 30
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)


class UnsupportedPlot(ValueError):
    pass


def decimal(x) -> str:
    """Exact rational rounded half-up to 6 decimals, trailing zeros dropped."""
    x = Fraction(x)
    scaled = x * 10 ** 6
    n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10 ** 6)
    if frac == 0:
        return f"{sign}{whole}" if whole else "0"
    return f"{sign}{whole}.{frac:06d}".rstrip("0")


def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class _View:
    """Affine map from the padded bounding box onto the square canvas, y up."""

    def __init__(self, points):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, Fraction(1))
        pad = span / 10
        cx, cy = (self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2
        half = span / 2 + pad
        self.x0, self.x1 = cx - half, cx + half
        self.y0, self.y1 = cy - half, cy + half
        self.scale = Fraction(CANVAS - 2 * MARGIN) / (2 * half)

    def map(self, p) -> tuple[str, str]:
        return (decimal(MARGIN + (p[0] - self.x0) * self.scale),
                decimal(CANVAS - MARGIN - (p[1] - self.y0) * self.scale))

    def clip(self, H: OrientedHyperplane):
        """End points of H inside the view box, or None."""
        a, b = H.normal
        t = H.offset
        hits = set()
        if b:
            for x in (self.x0, self.x1):
                y = (t - a * x) / b
                if self.y0 <= y <= self.y1:
                    hits.add((x, y))
        if a:
            for y in (self.y0, self.y1):
                x = (t - b * y) / a
                if self.x0 <= x <= self.x1:
                    hits.add((x, y))
        hits = sorted(hits)
        if len(hits) < 2:
            return None
        return hits[0], hits[-1]


def _color(c: int) -> str:
    return PALETTE[(c - 1) % len(PALETTE)]


def emit_svg(F: ColoredFamily, certificate=None, title: Optional[str] = None) -> str:
    if F.d != 2:
        raise UnsupportedPlot(f"plots are drawn for d = 2 only, got d = {F.d}")
    view = _View(F.vertices())
    highlight: set[str] = set()
    lines = []
    if isinstance(certificate, TransversalWitness):
        highlight = set(certificate.incidences)
        lines.append(("transversal", certificate.hyperplane))
    elif isinstance(certificate, RadonViolation):
        highlight = set(certificate.pair.part1) | set(certificate.pair.part2)
        lines.append(("separator", certificate.separator))
    elif certificate is not None and not isinstance(certificate, OpenCase):
        raise TypeError(f"cannot plot {type(certificate).__name__}")

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f'<title>{safe}</title>')
    for m, P in F.members.items():
        color = _color(F.coloring[m])
        width = "3" if m in highlight else "1.5"
        hull = _hull(P.vertices)
        pts = [view.map(v) for v in hull]
        if len(pts) == 1:
            x, y = pts[0]
            out.append(f'<circle id="{m}" cx="{x}" cy="{y}" r="3" fill="{color}"/>')
        elif len(pts) == 2:
            (x1, y1), (x2, y2) = pts
            out.append(f'<line id="{m}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                       f'stroke="{color}" stroke-width="{width}"/>')
        else:
            coords = " ".join(f"{x},{y}" for x, y in pts)
            out.append(f'<polygon id="{m}" points="{coords}" fill="{color}" fill-opacity="0.25" '
                       f'stroke="{color}" stroke-width="{width}"/>')
    for name, H in lines:
        seg = view.clip(H)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = (view.map(p) for p in seg)
        out.append(f'<line class="{name}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   f'stroke="black" stroke-width="1" stroke-dasharray="6,4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
