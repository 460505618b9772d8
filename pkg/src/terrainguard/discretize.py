"""Guard-candidate and witness discretization.

The candidate set is every vertex plus the extremal points of every
vertex's visibility region; covering the witnesses derived from the
overlay of the candidates' visibility intervals is then equivalent to
covering the whole terrain.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .geometry import (
    EdgePoint,
    Terrain,
    TerrainPoint,
    VertexRef,
    VisibilityRegion,
)

_LOG = logging.getLogger(__name__)

VERTEX = "vertex"
BECOMES_VISIBLE = "becomes-visible"
BECOMES_INVISIBLE = "becomes-invisible"


class CoverageError(ValueError):
    """Raised when the guard set fails to cover the terrain."""


@dataclass(frozen=True)
class Provenance:
    """Why a candidate exists: a vertex, or an extremal point of some
    vertex's visibility region.

    For extremal provenance, ``kind`` records whether ``vertex`` becomes
    visible or invisible when sweeping across the point left to right.
    """

    kind: str
    vertex: int


@dataclass(frozen=True)
class GuardCandidate:
    id: int
    location: TerrainPoint
    x: Fraction
    provenance: tuple[Provenance, ...]

    def is_vertex(self) -> bool:
        return isinstance(self.location, VertexRef)


def build_guard_candidates(terrain: Terrain,
                           regions: Sequence[VisibilityRegion]
                           ) -> list[GuardCandidate]:
    """All vertices plus the extremal points of the given vertex regions,
    merged by position, sorted by x, with dense ids."""
    assert len(regions) == terrain.n
    prov: dict[Fraction, list[Provenance]] = {
        x: [Provenance(VERTEX, i)] for i, x in enumerate(terrain.xs)}
    for v, region in enumerate(regions):
        for lo, hi in region.intervals:
            prov.setdefault(lo, []).append(Provenance(BECOMES_VISIBLE, v))
            prov.setdefault(hi, []).append(Provenance(BECOMES_INVISIBLE, v))
    order = {VERTEX: 0, BECOMES_VISIBLE: 1, BECOMES_INVISIBLE: 2}
    out = []
    for gid, x in enumerate(sorted(prov)):
        records = tuple(sorted(prov[x], key=lambda r: (order[r.kind], r.vertex)))
        out.append(GuardCandidate(
            id=gid, location=terrain.point_at_x(x), x=x, provenance=records))
    return out


def reindex(candidates: Iterable[GuardCandidate]) -> list[GuardCandidate]:
    """Reassign dense ids after filtering, preserving x-order."""
    return [GuardCandidate(i, c.location, c.x, c.provenance)
            for i, c in enumerate(candidates)]


# -- overlay of visibility intervals --------------------------------------

INTERVAL = "maximal-interval"
POINT = "end-point"


@dataclass(frozen=True)
class OverlayFeature:
    kind: str
    lo: Fraction
    hi: Fraction
    covering_guards: tuple[int, ...]


def build_overlay(terrain: Terrain,
                  guards: Sequence[GuardCandidate],
                  regions: Sequence[VisibilityRegion]) -> list[OverlayFeature]:
    """Overlay of all guards' visibility intervals: alternating end-point
    and maximal-interval features partitioning the terrain's x-range.

    Raises CoverageError if the union of the regions misses any part of the
    terrain.
    """
    events: dict[Fraction, tuple[list[int], list[int]]] = {}
    for guard, region in zip(guards, regions):
        for lo, hi in region.intervals:
            events.setdefault(lo, ([], []))[0].append(guard.id)
            events.setdefault(hi, ([], []))[1].append(guard.id)
    xs = sorted(events)
    x_lo, x_hi = terrain.x_range()
    if not xs or xs[0] > x_lo or xs[-1] < x_hi:
        missing = x_lo if (not xs or xs[0] > x_lo) else x_hi
        raise CoverageError(f"V(G) != T at x = {missing}")

    features: list[OverlayFeature] = []
    active: set[int] = set()
    prev_x: Optional[Fraction] = None
    for x in xs:
        opens, closes = events[x]
        if prev_x is not None:
            if not active:
                raise CoverageError(f"V(G) != T at x = {(prev_x + x) / 2}")
            features.append(OverlayFeature(
                INTERVAL, prev_x, x, tuple(sorted(active))))
        active.update(opens)
        # the point itself is covered by closers as well (regions are closed)
        features.append(OverlayFeature(POINT, x, x, tuple(sorted(active))))
        active.difference_update(closes)
        prev_x = x
    assert not active
    return features


def dump_overlay(features: Sequence[OverlayFeature]) -> str:
    """Plain-text overlay dump: one line per feature 'lo hi ids...'."""
    lines = []
    for f in features:
        ids = " ".join(str(g) for g in f.covering_guards)
        lines.append(f"{f.lo} {f.hi} {ids}")
    return "\n".join(lines) + "\n"


# -- witnesses -------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    id: int
    covering_guards: tuple[int, ...]
    source_feature: Optional[tuple[Fraction, Fraction]] = None


def build_witnesses(features: Sequence[OverlayFeature],
                    inclusion_minimal_only: bool = True,
                    keep_sources: bool = False) -> list[Witness]:
    """One witness per feature, optionally keeping only features whose
    covering set is locally inclusion-minimal.

    The local filter compares each maximal interval with its neighboring
    maximal intervals; end-point features between two intervals carry the
    union of both neighbors' sets (regions are closed), so they can never
    be strictly smaller than a neighbor and are dropped by the filter.
    """
    out: list[Witness] = []

    def add(f: OverlayFeature) -> None:
        src = (f.lo, f.hi) if keep_sources else None
        out.append(Witness(len(out), f.covering_guards, src))

    if not inclusion_minimal_only:
        for f in features:
            add(f)
        return out

    intervals = [f for f in features if f.kind == INTERVAL]
    assert intervals, "a covered terrain always yields interval features"
    for i, f in enumerate(intervals):
        cover = set(f.covering_guards)
        if i > 0:
            left = set(intervals[i - 1].covering_guards)
            if left < cover:
                continue
        if i + 1 < len(intervals):
            right = set(intervals[i + 1].covering_guards)
            if right < cover:
                continue
        add(f)

    # End points between two intervals carry the union of the neighbors'
    # sets, so they can never be strictly smaller than both; keep a guard
    # for the theoretical possibility anyway.
    prev_interval = None
    for f in features:
        if f.kind == INTERVAL:
            prev_interval = set(f.covering_guards)
        elif prev_interval is not None:
            point = set(f.covering_guards)
            if point < prev_interval:
                _LOG.warning("end-point feature at x=%s is inclusion-minimal "
                             "against its neighbors", f.lo)
    return out
