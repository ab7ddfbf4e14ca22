"""Log-growth Newton polygons, right endpoint anchored at (mu, 0)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .series import fraction_str, parse_fraction


@dataclass(frozen=True)
class NewtonPolygon:
    """A lower-convex polygon given by vertices ``(x, y)`` with rational y.

    Collinear vertices are kept as given; use :meth:`normalize` to merge them.
    """

    vertices: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        verts = tuple((int(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a Newton polygon needs at least one vertex")
        xs = [x for x, _ in verts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("abscissae must be strictly increasing")
        if verts[-1][1] != 0:
            raise ValueError("right endpoint must lie on y = 0")
        slopes = self.slopes()
        if any(b < a for a, b in zip(slopes, slopes[1:])):
            raise ValueError("polygon is not lower convex")

    def __repr__(self):
        pts = ", ".join(f"({x}, {y})" for x, y in self.vertices)
        return f"NewtonPolygon([{pts}])"

    @property
    def width(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0]

    def slopes(self) -> list[Fraction]:
        """Slopes of the unit-width pieces, left to right (one per unit of width)."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.extend([(y1 - y0) / (x1 - x0)] * (x1 - x0))
        return out

    def height(self, x) -> Fraction:
        x = Fraction(x)
        verts = self.vertices
        if not verts[0][0] <= x <= verts[-1][0]:
            raise ValueError(f"x={x} outside [{verts[0][0]}, {verts[-1][0]}]")
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return verts[0][1]

    def normalize(self) -> "NewtonPolygon":
        verts = [self.vertices[0]]
        for (x1, y1), nxt in zip(self.vertices[1:], self.vertices[2:] + (None,)):
            if nxt is not None:
                x0, y0 = verts[-1]
                x2, y2 = nxt
                if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
                    continue
            verts.append((x1, y1))
        return NewtonPolygon(tuple(verts))

    def to_record(self) -> dict:
        return {"vertices": [[x, fraction_str(y)] for x, y in self.vertices]}

    @classmethod
    def from_record(cls, record: dict) -> "NewtonPolygon":
        return cls(tuple((int(x), parse_fraction(y)) for x, y in record["vertices"]))


def p_sigma(sigma) -> NewtonPolygon:
    """The polygon with vertices (0, -sigma), (1, -sigma), (2, 0)."""
    sigma = Fraction(sigma)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return NewtonPolygon(((0, -sigma), (1, -sigma), (2, Fraction(0))))


def from_slopes(slopes: Iterable, mu: int) -> NewtonPolygon:
    """Polygon whose unit pieces carry the given slopes, anchored at (mu, 0).

    Slopes are sorted ascending and consumed right to left starting from the
    largest, so the result is lower convex.
    """
    slopes = sorted(Fraction(s) for s in slopes)
    if len(slopes) != mu:
        raise ValueError(f"expected {mu} slopes, got {len(slopes)}")
    if any(s < 0 for s in slopes):
        raise ValueError("log-growth slopes must be >= 0")
    y = Fraction(0)
    verts = [(mu, y)]
    for x, s in zip(range(mu - 1, -1, -1), reversed(slopes)):
        y -= s
        verts.append((x, y))
    return NewtonPolygon(tuple(reversed(verts)))


def left_endpoint(P: NewtonPolygon) -> tuple[int, Fraction]:
    return P.vertices[0]


def lies_above(P: NewtonPolygon, Q: NewtonPolygon) -> bool:
    """True iff P is nowhere below Q on their common x-range."""
    if (P.vertices[0][0], P.vertices[-1][0]) != (Q.vertices[0][0], Q.vertices[-1][0]):
        raise ValueError("polygons must share their x-range")
    xs = sorted({x for x, _ in P.vertices} | {x for x, _ in Q.vertices})
    return all(P.height(x) >= Q.height(x) for x in xs)


def polygons_equal(P: NewtonPolygon, Q: NewtonPolygon) -> bool:
    return P.normalize().vertices == Q.normalize().vertices
