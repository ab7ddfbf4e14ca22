"""Static SVG figures: polygon overlays and estimator convergence plots."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .newton import NewtonPolygon, left_endpoint
from .series import fraction_str

WIDTH, HEIGHT, MARGIN = 480, 360, 50


def _fmt(x: float) -> str:
    return f"{x:.2f}"


class _Frame:
    def __init__(self, x_range, y_range):
        self.x0, self.x1 = map(float, x_range)
        self.y0, self.y1 = map(float, y_range)
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1

    def px(self, x) -> float:
        return MARGIN + (float(x) - self.x0) / (self.x1 - self.x0) * (WIDTH - 2 * MARGIN)

    def py(self, y) -> float:
        return HEIGHT - MARGIN - (float(y) - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2 * MARGIN)

    def axes(self, xlabel: str, ylabel: str, xticks, yticks) -> list[str]:
        out = [
            f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
            f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 10}" text-anchor="middle">{xlabel}</text>',
            f'<text x="12" y="{HEIGHT / 2}" transform="rotate(-90 12 {HEIGHT / 2})" text-anchor="middle">{ylabel}</text>',
        ]
        for x, label in xticks:
            out.append(f'<text x="{_fmt(self.px(x))}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" font-size="11">{label}</text>')
        for y, label in yticks:
            out.append(f'<text x="{MARGIN - 6}" y="{_fmt(self.py(y) + 4)}" text-anchor="end" font-size="11">{label}</text>')
        return out

    def polyline(self, points, color: str, css_class: str) -> str:
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in points)
        return f'<polyline class="{css_class}" points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'


def _document(body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def polygons_svg(special: NewtonPolygon, generic: NewtonPolygon) -> str:
    """Overlay of the special and generic polygons with their left endpoints marked."""
    ys = [y for _, y in special.vertices + generic.vertices]
    xs = [x for x, _ in special.vertices + generic.vertices]
    lo = min(ys)
    frame = _Frame((min(xs), max(xs)), (lo - Fraction(1, 10), max(ys) + Fraction(1, 10)))
    body = frame.axes("x", "y", [(x, str(x)) for x in sorted(set(xs))],
                      sorted({(y, fraction_str(y)) for y in ys}))
    body.append(frame.polyline(special.vertices, "#1f77b4", "special"))
    body.append(frame.polyline(generic.vertices, "#d62728", "generic"))
    (xs_, ys_), (xg, yg) = left_endpoint(special), left_endpoint(generic)
    for (x, y), color, name in (((xs_, ys_), "#1f77b4", "special"), ((xg, yg), "#d62728", "generic")):
        body.append(f'<circle class="endpoint-{name}" cx="{_fmt(frame.px(x))}" cy="{_fmt(frame.py(y))}" '
                    f'r="4" fill="{color}" data-y="{fraction_str(y)}"/>')
    gap = ys_ - yg
    body.append(f'<text class="gap" x="{MARGIN + 8}" y="{MARGIN - 14}" font-size="12">'
                f'left endpoint gap = {fraction_str(gap)}</text>')
    body.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 28}" text-anchor="end" fill="#1f77b4" font-size="12">special</text>')
    body.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 14}" text-anchor="end" fill="#d62728" font-size="12">generic</text>')
    return _document(body)


def convergence_svg(series: Sequence[tuple[str, str, Sequence[tuple[float, float]], float]]) -> str:
    """Line plot of ``(label, color, points, target)`` tuples; targets drawn dashed."""
    xs = [x for _, _, pts, _ in series for x, _ in pts]
    ys = [y for _, _, pts, _ in series for _, y in pts] + [t for *_, t in series]
    frame = _Frame((min(xs), max(xs)), (min(0.0, min(ys)), max(ys) * 1.05))
    x_lo, x_hi = int(min(xs)), int(max(xs))
    body = frame.axes("r", "log-growth ratio", [(x_lo, str(x_lo)), (x_hi, str(x_hi))],
                      [(t, f"{t:.3f}") for *_, t in series])
    for i, (label, color, pts, target) in enumerate(series):
        body.append(frame.polyline(pts, color, label))
        body.append(f'<line x1="{MARGIN}" y1="{_fmt(frame.py(target))}" x2="{WIDTH - MARGIN}" '
                    f'y2="{_fmt(frame.py(target))}" stroke="{color}" stroke-dasharray="4 3"/>')
        body.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 28 + 14 * i}" text-anchor="end" '
                    f'fill="{color}" font-size="12">{label}</text>')
    return _document(body)
