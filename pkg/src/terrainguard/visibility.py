"""Visibility region computation.

A point q right of p is visible from p exactly when the slope from p to q
is at least the slope from p to every vertex strictly between them, so a
single left-to-right pass tracking the steepest blocker seen so far (the
apex of the upper convex chain of blockers) yields the visibility region in
O(n).  Two passes, one per direction, give the whole region.

Two tiers implement the pass:

* an exact tier using integer cross products (always correct, pure Python);
* a filtered tier that classifies vertices with vectorized float slopes and
  re-verifies every transition, near-tie, and blocker hand-off with exact
  integer arithmetic.  Float results are only trusted outside certified
  error margins, so the outcome is identical to the exact tier.

The filtered tier requires coordinates small enough that integer cross
products are exactly representable in a float64 (Terrain.exact_float_ok);
otherwise the exact tier runs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .geometry import EdgePoint, Terrain, TerrainPoint, VisibilityRegion, merge_intervals

_U = 2.0 ** -53
_FAST_MIN_LEN = 64


def _sweep_exact(xi, yi, n, P, r0, xp_scaled):
    """Exact one-directional sweep; returns closed intervals in scaled x."""
    if r0 >= n:
        return [[xp_scaled, xp_scaled]]
    X, Y, W = P
    intervals = [[xp_scaled, Fraction(xi[r0])]]
    m = r0  # steepest blocker so far
    vis_prev = True
    prev_c = 0
    for j in range(r0 + 1, n):
        nx_m = xi[m] * W - X
        ny_m = yi[m] * W - Y
        c = nx_m * (yi[j] * W - Y) - ny_m * (xi[j] * W - X)
        if c >= 0:
            if vis_prev:
                intervals[-1][1] = Fraction(xi[j])
            else:
                # edge re-emerges above the blocker ray; prev_c < 0 strictly
                t = Fraction(prev_c, prev_c - c)
                xstar = Fraction(xi[j - 1]) + t * (xi[j] - xi[j - 1])
                intervals.append([xstar, Fraction(xi[j])])
            m = j
            vis_prev = True
        else:
            vis_prev = False
        prev_c = c
    return intervals


def _sweep_fast(xi, yi, xf, yf, n, P, r0, xp_scaled, rational):
    """Filtered one-directional sweep; falls back to exact when too many
    indices need verification.  Returns the same intervals as _sweep_exact."""
    m_len = n - r0
    if m_len < _FAST_MIN_LEN:
        return _sweep_exact(xi, yi, n, P, r0, xp_scaled)
    X, Y, W = P

    if rational:
        pxf = float(Fraction(X, W))
        pyf = float(Fraction(Y, W))
        epx = _U * abs(pxf)
        epy = _U * abs(pyf)
    else:
        pxf = float(X)
        pyf = float(Y)
        epx = epy = 0.0

    dx = xf[r0:] - pxf
    dy = yf[r0:] - pyf
    with np.errstate(divide="ignore", invalid="ignore"):
        s = dy / dx
        abs_s = np.abs(s)
        if rational:
            ex = epx + _U * np.abs(dx)
            ey = epy + _U * np.abs(dy)
            denom = dx - ex
            bad = (denom <= 0) | ~np.isfinite(s)
            safe = np.where(bad, 1.0, denom)
            err_s = 4.0 * (_U * abs_s + (ey + abs_s * ex) / safe)
            err_s = np.where(bad, np.inf, err_s)
        else:
            bad = ~np.isfinite(s)
            err_s = 4.0 * _U * abs_s
            err_s = np.where(bad, np.inf, err_s)
        M = np.maximum.accumulate(s)
        m_prev = np.empty_like(M)
        m_prev[0] = -np.inf
        m_prev[1:] = M[:-1]
        err_m = np.maximum.accumulate(err_s)
        err_m_prev = np.empty_like(err_m)
        err_m_prev[0] = 0.0
        err_m_prev[1:] = err_m[:-1]
        visf = s >= m_prev
        gap = np.abs(s - m_prev)
        margin = err_s + err_m_prev + 2.0 * _U * (abs_s + np.abs(m_prev))
        uncertain = ~(gap > margin)  # catches NaN as well
    visf[0] = True
    uncertain[0] = False
    trans = np.empty(m_len, dtype=bool)
    trans[0] = False
    trans[1:] = visf[1:] != visf[:-1]
    flags = uncertain | trans
    flagged = np.flatnonzero(flags[1:]) + 1
    if flagged.size > m_len // 4 + 64:
        return _sweep_exact(xi, yi, n, P, r0, xp_scaled)

    if rational:
        def cross(mi, j):
            return ((xi[mi] * W - X) * (yi[j] * W - Y)
                    - (yi[mi] * W - Y) * (xi[j] * W - X))
    else:
        # Integer cross products are exact in float64 here (exact_float_ok).
        def cross(mi, j):
            return int((xf[mi] - pxf) * (yf[j] - pyf)
                       - (yf[mi] - pyf) * (xf[j] - pxf))

    intervals = [[xp_scaled, Fraction(xi[r0])]]
    m = r0
    vis_prev = True

    def emerge(j, c1):
        c0 = cross(m, j - 1)
        assert c0 < 0
        t = Fraction(c0, c0 - c1)
        xstar = Fraction(xi[j - 1]) + t * (xi[j] - xi[j - 1])
        intervals.append([xstar, Fraction(xi[j])])

    pos = 1
    for k in flagged:
        if pos < k:
            # run [pos, k): certified uniform float classification
            if visf[pos]:
                g_end = r0 + k - 1
                if vis_prev:
                    intervals[-1][1] = Fraction(xi[g_end])
                else:
                    emerge(r0 + pos, cross(m, r0 + pos))
                    intervals[-1][1] = Fraction(xi[g_end])
                m = g_end
                vis_prev = True
            else:
                vis_prev = False
        gj = r0 + k
        c = cross(m, gj)
        if c >= 0:
            if vis_prev:
                intervals[-1][1] = Fraction(xi[gj])
            else:
                emerge(gj, c)
            m = gj
            vis_prev = True
        else:
            vis_prev = False
        pos = k + 1
    if pos < m_len:
        if visf[pos]:
            g_end = n - 1
            if vis_prev:
                intervals[-1][1] = Fraction(xi[g_end])
            else:
                emerge(r0 + pos, cross(m, r0 + pos))
                intervals[-1][1] = Fraction(xi[g_end])
        # final state is irrelevant past the last vertex
    return intervals


def _sweep(terrain: Terrain, mirrored: bool, P, r0, xp_scaled):
    if mirrored:
        xi, yi = terrain.xim, terrain.yim
        xf, yf = terrain.xfm, terrain.yfm
    else:
        xi, yi = terrain.xi, terrain.yi
        xf, yf = terrain.xf, terrain.yf
    rational = P[2] != 1
    if terrain.exact_float_ok:
        return _sweep_fast(xi, yi, xf, yf, terrain.n, P, r0, xp_scaled, rational)
    return _sweep_exact(xi, yi, terrain.n, P, r0, xp_scaled)


def visibility_region(terrain: Terrain, p: TerrainPoint) -> VisibilityRegion:
    """Exact visibility region of ``p`` as maximal closed x-intervals."""
    terrain.validate_point(p)
    X, Y, W = terrain.point_scaled(p)
    xp_scaled = terrain.point_x(p) * terrain.sx
    n = terrain.n

    right = _sweep(terrain, False, (X, Y, W), terrain.first_vertex_right(p), xp_scaled)
    r0m = n - 1 - terrain.last_vertex_left(p)
    left = _sweep(terrain, True, (-X, Y, W), r0m, -xp_scaled)

    sx = terrain.sx
    out = [(Fraction(-hi) / sx, Fraction(-lo) / sx) for lo, hi in reversed(left)]
    out.extend((Fraction(lo) / sx, Fraction(hi) / sx) for lo, hi in right)
    return VisibilityRegion(owner=p, intervals=merge_intervals(out))


def vertex_regions(terrain: Terrain) -> list[VisibilityRegion]:
    """Visibility regions of all vertices.

    Pure per-vertex work; safe to parallelize externally if desired.
    """
    from .geometry import VertexRef

    return [visibility_region(terrain, VertexRef(i)) for i in range(terrain.n)]
