"""Exact 1.5D terrains and the visibility predicate.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this module
ever touches a float.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


class TerrainError(ValueError):
    """Raised for malformed chains or points off the chain."""


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class TerrainPoint:
    """A point on a terrain chain. Ordered by x (y breaks no ties on a valid chain)."""

    x: Fraction
    y: Fraction

    def __repr__(self) -> str:
        return f"TerrainPoint({self.x}, {self.y})"


@dataclass(frozen=True)
class Terrain:
    vertices: Tuple[TerrainPoint, ...]

    def __post_init__(self):
        # cached sorted abscissae for bisection
        object.__setattr__(self, "_xs", tuple(v.x for v in self.vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def x_min(self) -> Fraction:
        return self.vertices[0].x

    @property
    def x_max(self) -> Fraction:
        return self.vertices[-1].x

    def height(self, x: Fraction) -> Fraction:
        xs = self._xs
        if x < xs[0] or x > xs[-1]:
            raise TerrainError(f"x={x} outside terrain range [{xs[0]}, {xs[-1]}]")
        i = bisect.bisect_left(xs, x)
        if xs[i] == x:
            return self.vertices[i].y
        a, b = self.vertices[i - 1], self.vertices[i]
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x)

    def vertices_between(self, x0: Fraction, x1: Fraction) -> Sequence[TerrainPoint]:
        """Vertices with x0 < v.x < x1."""
        lo = bisect.bisect_right(self._xs, x0)
        hi = bisect.bisect_left(self._xs, x1)
        return self.vertices[lo:hi]


def orientation(a: TerrainPoint, b: TerrainPoint, c: TerrainPoint) -> int:
    """Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (det > 0) - (det < 0)


def make_terrain(raw_vertices: Iterable[Tuple[RationalLike, RationalLike]]) -> Terrain:
    pts = [TerrainPoint(as_rational(x), as_rational(y)) for x, y in raw_vertices]
    if len(pts) < 2:
        raise TerrainError("a terrain needs at least 2 vertices")
    for a, b in zip(pts, pts[1:]):
        if b.x <= a.x:
            raise TerrainError(f"x-coordinates must be strictly increasing (got {a.x} then {b.x})")
    kept = [pts[0]]
    for v in pts[1:]:
        if len(kept) >= 2 and orientation(kept[-2], kept[-1], v) == 0:
            kept[-1] = v
        else:
            kept.append(v)
    return Terrain(tuple(kept))


def point_on(terrain: Terrain, x: RationalLike) -> TerrainPoint:
    x = as_rational(x)
    return TerrainPoint(x, terrain.height(x))


def sees(terrain: Terrain, p: TerrainPoint, q: TerrainPoint) -> bool:
    """True iff the segment pq never passes strictly below the terrain.

    On a piecewise-linear chain the gap between terrain and segment peaks at a
    vertex, so only the vertices strictly between p and q need testing.
    """
    if q.x < p.x:
        p, q = q, p
    for v in terrain.vertices_between(p.x, q.x):
        if orientation(p, q, v) > 0:
            return False
    return True


def reflect(terrain: Terrain) -> Terrain:
    """Mirror image under x -> -x."""
    return Terrain(tuple(TerrainPoint(-v.x, v.y) for v in reversed(terrain.vertices)))


def reflect_point(p: TerrainPoint) -> TerrainPoint:
    return TerrainPoint(-p.x, p.y)


def scale(terrain: Terrain, factor: RationalLike) -> Terrain:
    f = as_rational(factor)
    if f <= 0:
        raise ValueError("scale factor must be positive")
    return Terrain(tuple(TerrainPoint(v.x * f, v.y * f) for v in terrain.vertices))
