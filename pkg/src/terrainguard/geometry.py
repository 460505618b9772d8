"""Exact 1.5D terrain model: the vertex chain, points on it, and visibility.

All geometric decisions are made with exact arithmetic.  Vertices are stored
as rationals and mirrored into a scaled integer coordinate system so that
orientation predicates reduce to integer cross products.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

import numpy as np


class TerrainError(ValueError):
    """Raised for malformed terrain input."""


@dataclass(frozen=True)
class VertexRef:
    """Point sitting on vertex ``index`` of the chain."""

    index: int


@dataclass(frozen=True)
class EdgePoint:
    """Point strictly inside edge ``edge`` at abscissa ``x``.

    The y-coordinate is implied by linear interpolation on the edge.  Points
    whose abscissa equals a vertex abscissa must be represented as
    :class:`VertexRef`; this keeps representations canonical and the order
    by x total.
    """

    edge: int
    x: Fraction


TerrainPoint = Union[VertexRef, EdgePoint]

# Exactness precondition for the float fast path: cross products of scaled
# integer coordinate differences must stay below 2**53 to be exact in a
# float64.  See Terrain.exact_float_ok.
_FLOAT_EXACT_LIMIT = 1 << 52


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TerrainError(f"coordinate {value!r} is not an exact rational")


class Terrain:
    """Strictly x-monotone chain of line segments with rational vertices.

    Immutable after construction; all query functions are pure, so a Terrain
    can be shared freely between threads.
    """

    def __init__(self, vertices: Iterable[tuple]):
        xs = []
        ys = []
        for vx, vy in vertices:
            xs.append(_as_fraction(vx))
            ys.append(_as_fraction(vy))
        if len(xs) < 2:
            raise TerrainError(f"terrain needs at least 2 vertices, got {len(xs)}")
        for i in range(1, len(xs)):
            if xs[i] <= xs[i - 1]:
                raise TerrainError(f"terrain not x-monotone at vertex {i}")
        self.xs: tuple[Fraction, ...] = tuple(xs)
        self.ys: tuple[Fraction, ...] = tuple(ys)
        self.n = len(xs)

        # Scaled integer mirror: x*sx and y*sy are integers.
        self.sx = lcm(*(f.denominator for f in self.xs))
        self.sy = lcm(*(f.denominator for f in self.ys))
        self.xi = [int(f * self.sx) for f in self.xs]
        self.yi = [int(f * self.sy) for f in self.ys]

        # Float mirrors for the filtered visibility sweep.  Exact only when
        # the coordinates are small enough; exact_float_ok records whether
        # integer cross products of coordinate differences fit a float64.
        self.xf = np.array(self.xi, dtype=np.float64)
        self.yf = np.array(self.yi, dtype=np.float64)
        spread_x = self.xi[-1] - self.xi[0]
        spread_y = max(self.yi) - min(self.yi)
        self.exact_float_ok = spread_x * spread_y < _FLOAT_EXACT_LIMIT

        # x-reversed copies so the leftward sweep can reuse the rightward one.
        self.xim = [-v for v in reversed(self.xi)]
        self.yim = list(reversed(self.yi))
        self.xfm = np.array(self.xim, dtype=np.float64)
        self.yfm = np.array(self.yim, dtype=np.float64)

    # -- basic accessors -------------------------------------------------

    def x_range(self) -> tuple[Fraction, Fraction]:
        return self.xs[0], self.xs[-1]

    def edge_count(self) -> int:
        return self.n - 1

    def vertex(self, i: int) -> tuple[Fraction, Fraction]:
        return self.xs[i], self.ys[i]

    # -- points on the chain ---------------------------------------------

    def point_x(self, p: TerrainPoint) -> Fraction:
        if isinstance(p, VertexRef):
            return self.xs[p.index]
        return p.x

    def point_y(self, p: TerrainPoint) -> Fraction:
        if isinstance(p, VertexRef):
            return self.ys[p.index]
        i = p.edge
        t = (p.x - self.xs[i]) / (self.xs[i + 1] - self.xs[i])
        return self.ys[i] + t * (self.ys[i + 1] - self.ys[i])

    def point_scaled(self, p: TerrainPoint) -> tuple[int, int, int]:
        """Return homogeneous integer coordinates (X, Y, W) in scaled space.

        The point is (X/W, Y/W) with W > 0, where scaled space means
        coordinates multiplied by (sx, sy).
        """
        if isinstance(p, VertexRef):
            return self.xi[p.index], self.yi[p.index], 1
        i = p.edge
        xs = p.x * self.sx  # scaled abscissa, a Fraction
        a, b = xs.numerator, xs.denominator
        x1, y1 = self.xi[i], self.yi[i]
        x2, y2 = self.xi[i + 1], self.yi[i + 1]
        w = b * (x2 - x1)
        x = a * (x2 - x1)
        y = y1 * w + (a - b * x1) * (y2 - y1)
        g = gcd(gcd(abs(x), abs(y)), w)
        if g > 1:
            x //= g
            y //= g
            w //= g
        return x, y, w

    def point_at_x(self, x: Fraction) -> TerrainPoint:
        """Canonical point of the chain at abscissa ``x``."""
        x = _as_fraction(x)
        if x < self.xs[0] or x > self.xs[-1]:
            raise TerrainError(f"abscissa {x} outside terrain x-range")
        i = bisect_left(self.xs, x)
        if i < self.n and self.xs[i] == x:
            return VertexRef(i)
        return EdgePoint(i - 1, x)

    def validate_point(self, p: TerrainPoint) -> None:
        if isinstance(p, VertexRef):
            if not 0 <= p.index < self.n:
                raise TerrainError(f"vertex index {p.index} out of range")
            return
        if not 0 <= p.edge < self.n - 1:
            raise TerrainError(f"edge index {p.edge} out of range")
        if not self.xs[p.edge] < p.x < self.xs[p.edge + 1]:
            raise TerrainError(f"EdgePoint x={p.x} not strictly inside edge {p.edge}")

    # Indices of the vertices strictly left / right of a point.

    def first_vertex_right(self, p: TerrainPoint) -> int:
        return p.index + 1 if isinstance(p, VertexRef) else p.edge + 1

    def last_vertex_left(self, p: TerrainPoint) -> int:
        return p.index - 1 if isinstance(p, VertexRef) else p.edge


def orient_scaled(a: tuple[int, int, int], b: tuple[int, int, int],
                  c: tuple[int, int, int]) -> int:
    """Sign of the cross product (b - a) x (c - a) for homogeneous points.

    Positive means c lies strictly left of the directed line a -> b (above
    it, when a is left of b).  Exact for arbitrary integer inputs.
    """
    xa, ya, wa = a
    xb, yb, wb = b
    xc, yc, wc = c
    d = ((xb * wa - xa * wb) * (yc * wa - ya * wc)
         - (yb * wa - ya * wb) * (xc * wa - xa * wc))
    # The omitted denominator wa*wa*wb*wc is positive, so the sign carries.
    return (d > 0) - (d < 0)


def sees(terrain: Terrain, p: TerrainPoint, q: TerrainPoint) -> bool:
    """Exact visibility predicate: the segment pq is nowhere strictly below
    the chain.

    Symmetric in p and q; O(n) scan over the vertices strictly between them.
    A vertex exactly on the segment does not block (visibility is closed).
    """
    px = terrain.point_x(p)
    qx = terrain.point_x(q)
    if px == qx:
        return True  # canonical representation: same abscissa means same point
    if px > qx:
        p, q = q, p
    a = terrain.point_scaled(p)
    b = terrain.point_scaled(q)
    lo = terrain.first_vertex_right(p)
    hi = terrain.last_vertex_left(q)
    xi, yi = terrain.xi, terrain.yi
    for k in range(lo, hi + 1):
        if orient_scaled(a, b, (xi[k], yi[k], 1)) > 0:
            return False
    return True


# -- visibility regions as interval lists --------------------------------


@dataclass(frozen=True)
class VisibilityRegion:
    """Set of abscissas visible from ``owner``: sorted, disjoint, maximal
    closed intervals (degenerate intervals allowed)."""

    owner: TerrainPoint
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def covers_x(self, x: Fraction) -> bool:
        lo = 0
        hi = len(self.intervals)
        while lo < hi:
            mid = (lo + hi) // 2
            a, b = self.intervals[mid]
            if x < a:
                hi = mid
            elif x > b:
                lo = mid + 1
            else:
                return True
        return False


def merge_intervals(intervals: Iterable[tuple[Fraction, Fraction]]
                    ) -> tuple[tuple[Fraction, Fraction], ...]:
    """Merge a sorted iterable of closed intervals into maximal ones.

    Touching intervals ([a,b],[b,c]) merge; the input must be sorted by lo.
    """
    out: list[tuple[Fraction, Fraction]] = []
    for lo, hi in intervals:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


def intervals_subset(inner: Sequence[tuple[Fraction, Fraction]],
                     outer: Sequence[tuple[Fraction, Fraction]]) -> bool:
    """True when the union of ``inner`` is contained in the union of
    ``outer``; both must be merged-maximal sorted interval lists."""
    j = 0
    for lo, hi in inner:
        while j < len(outer) and outer[j][1] < lo:
            j += 1
        if j == len(outer) or outer[j][0] > lo or outer[j][1] < hi:
            return False
    return True


def intervals_union(lists: Iterable[Sequence[tuple[Fraction, Fraction]]]
                    ) -> tuple[tuple[Fraction, Fraction], ...]:
    merged = sorted(iv for lst in lists for iv in lst)
    return merge_intervals(merged)


def extremal_points(terrain: Terrain, region: VisibilityRegion
                    ) -> list[TerrainPoint]:
    """Both endpoints of every interval of ``region`` as canonical points,
    sorted by x with duplicates merged."""
    seen = set()
    out = []
    for lo, hi in region.intervals:
        for x in (lo, hi):
            if x not in seen:
                seen.add(x)
                out.append(terrain.point_at_x(x))
    return out


# -- terrain file format --------------------------------------------------


def parse_terrain(text: str) -> Terrain:
    """Parse the terrain file format.

    Line 1 holds the vertex count; the following lines hold one vertex
    ``x y`` each, where a coordinate is a decimal literal or a ``p/q``
    rational (converted exactly).  ``#`` starts a comment line.
    """
    count = None
    vertices: list[tuple[Fraction, Fraction]] = []
    vertex_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if count is None:
            try:
                count = int(line)
            except ValueError:
                raise TerrainError(f"bad vertex count at line {lineno}: {line!r}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TerrainError(f"expected 'x y' at line {lineno}: {line!r}")
        try:
            x = Fraction(parts[0])
            y = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise TerrainError(f"malformed rational at line {lineno}: {line!r}")
        if vertices and x <= vertices[-1][0]:
            raise TerrainError(f"not x-monotone at line {lineno}")
        vertices.append((x, y))
        vertex_lines.append(lineno)
    if count is None:
        raise TerrainError("empty terrain file")
    if len(vertices) != count:
        raise TerrainError(
            f"vertex count {count} does not match {len(vertices)} vertex lines")
    if count < 2:
        raise TerrainError(f"terrain needs at least 2 vertices, got {count}")
    return Terrain(vertices)


def format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_terrain(terrain: Terrain, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(str(terrain.n))
    for x, y in zip(terrain.xs, terrain.ys):
        lines.append(f"{format_fraction(x)} {format_fraction(y)}")
    return "\n".join(lines) + "\n"
