"""Independent brute-force reference implementations.

These exist to validate the production code and to compute expected values
in tests.  They share no machinery with the fast paths: everything here
works on true rational coordinates with Fraction arithmetic and intersects
per-blocker constraints instead of sweeping.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .geometry import (
    EdgePoint,
    Terrain,
    TerrainPoint,
    VertexRef,
    VisibilityRegion,
    merge_intervals,
)


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _coords(terrain: Terrain, p: TerrainPoint) -> tuple[Fraction, Fraction]:
    return terrain.point_x(p), terrain.point_y(p)


def oracle_sees(terrain: Terrain, p: TerrainPoint, q: TerrainPoint) -> bool:
    """Definitional visibility check: every vertex strictly between p and q
    must lie on or below the segment pq."""
    a = _coords(terrain, p)
    b = _coords(terrain, q)
    if a[0] > b[0]:
        a, b = b, a
    dx = b[0] - a[0]
    if dx == 0:
        return True
    dy = b[1] - a[1]
    for k in range(terrain.n):
        x = terrain.xs[k]
        if not a[0] < x < b[0]:
            continue
        seg_y = a[1] + (x - a[0]) * dy / dx
        if terrain.ys[k] > seg_y:
            return False
    return True


def _edge_visible_part(terrain: Terrain, p: TerrainPoint, j: int):
    """Visible x-interval of edge j from p, or None.

    Intersects, over every potentially blocking vertex, the constraint that
    the vertex is not strictly above the sight segment; each constraint is
    linear along the edge, so it clips a closed t-interval.
    """
    px, py = _coords(terrain, p)
    ex0, ey0 = terrain.vertex(j)
    ex1, ey1 = terrain.vertex(j + 1)
    if ex0 < px < ex1:
        return ex0, ex1  # p's own edge is one straight segment
    if ex1 <= px:
        blockers = range(j + 1, terrain.last_vertex_left(p) + 1)
        left_of_p = True
    else:
        blockers = range(terrain.first_vertex_right(p), j + 1)
        left_of_p = False

    t_lo, t_hi = Fraction(0), Fraction(1)
    for k in blockers:
        v = terrain.vertex(k)
        if left_of_p:
            c0 = _cross((ex0, ey0), (px, py), v)
            c1 = _cross((ex1, ey1), (px, py), v)
        else:
            c0 = _cross((px, py), (ex0, ey0), v)
            c1 = _cross((px, py), (ex1, ey1), v)
        # feasible: c(t) = c0 + t*(c1 - c0) <= 0
        if c0 <= 0 and c1 <= 0:
            continue
        if c0 > 0 and c1 > 0:
            return None
        t_star = Fraction(c0, c0 - c1)
        if c0 > 0:
            t_lo = max(t_lo, t_star)
        else:
            t_hi = min(t_hi, t_star)
        if t_lo > t_hi:
            return None
    lo = ex0 + t_lo * (ex1 - ex0)
    hi = ex0 + t_hi * (ex1 - ex0)
    return lo, hi


def oracle_region(terrain: Terrain, p: TerrainPoint) -> VisibilityRegion:
    """Per-edge reference visibility region (O(n) blockers per edge)."""
    terrain.validate_point(p)
    pieces = []
    for j in range(terrain.n - 1):
        part = _edge_visible_part(terrain, p, j)
        if part is not None:
            pieces.append(part)
    pieces.sort()
    return VisibilityRegion(owner=p, intervals=merge_intervals(pieces))


def oracle_setcover(witnesses, guard_count: int) -> int:
    """Exhaustive set-cover optimum by increasing cardinality.

    ``witnesses`` is an iterable of guard-id collections.  Refuses more than
    20 guards.
    """
    if guard_count > 20:
        raise ValueError(f"oracle_setcover refuses {guard_count} > 20 guards")
    wit = [frozenset(w) for w in witnesses]
    if not wit:
        return 0
    if any(not w for w in wit):
        raise ValueError("witness with empty covering set")
    full = (1 << len(wit)) - 1
    guard_masks = []
    for g in range(guard_count):
        mask = 0
        for i, w in enumerate(wit):
            if g in w:
                mask |= 1 << i
        guard_masks.append(mask)
    for size in range(1, guard_count + 1):
        for combo in combinations(range(guard_count), size):
            acc = 0
            for g in combo:
                acc |= guard_masks[g]
            if acc == full:
                return size
    raise ValueError("instance is infeasible")


def _grid_candidates(terrain: Terrain, samples_per_edge: int) -> list[TerrainPoint]:
    pts: list[TerrainPoint] = [VertexRef(i) for i in range(terrain.n)]
    for j in range(terrain.n - 1):
        x0, x1 = terrain.xs[j], terrain.xs[j + 1]
        for i in range(1, samples_per_edge + 1):
            x = x0 + Fraction(i, samples_per_edge + 1) * (x1 - x0)
            pts.append(EdgePoint(j, x))
    return pts


def oracle_continuous_opt_upper(terrain: Terrain, samples_per_edge: int) -> int:
    """Optimal guard count over the finite grid of vertices plus
    ``samples_per_edge`` uniform interior points per edge.

    Any finite grid restricts continuous placement, so this value is an
    upper bound on the continuous optimum.  Exhaustive; small inputs only.
    """
    cands = _grid_candidates(terrain, samples_per_edge)
    regions = [oracle_region(terrain, p) for p in cands]

    # Coverage requirement at every overlay feature, realized as sample
    # points: all region endpoints plus midpoints between consecutive ones.
    endpoints = sorted({x for r in regions for iv in r.intervals for x in iv})
    samples = list(endpoints)
    for a, b in zip(endpoints, endpoints[1:]):
        samples.append((a + b) / 2)

    witnesses = set()
    for x in samples:
        cover = frozenset(i for i, r in enumerate(regions) if r.covers_x(x))
        if not cover:
            raise ValueError(f"grid does not cover x={x}")
        witnesses.add(cover)

    # Deduplicate identical coverage columns; safe for the optimum value.
    masks = {}
    wit_list = sorted(witnesses, key=sorted)
    for i, w in enumerate(wit_list):
        for g in w:
            masks[g] = masks.get(g, 0) | (1 << i)
    unique_masks = sorted(set(masks.values()), reverse=True)
    full = (1 << len(wit_list)) - 1
    for size in range(1, len(unique_masks) + 1):
        for combo in combinations(unique_masks, size):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return size
    raise ValueError("grid instance infeasible")
