"""Guard-candidate filters: both shrink the candidate set without changing
the optimal guard count."""

from __future__ import annotations

from typing import Sequence

from .discretize import (
    BECOMES_INVISIBLE,
    BECOMES_VISIBLE,
    VERTEX,
    GuardCandidate,
    reindex,
)
from .geometry import Terrain, VisibilityRegion, intervals_subset


def _edge_events(candidate: GuardCandidate) -> list[str]:
    """Direction events at an edge-interior candidate, visibility first.

    Provenance records are pre-sorted with becomes-visible before
    becomes-invisible, matching the tie rule for closed regions.
    """
    return [p.kind for p in candidate.provenance if p.kind != "vertex"]


def sweep_edge_events(event_lists: Sequence[Sequence[str]]) -> list[int]:
    """Core edge-filter sweep over one edge's candidates, left to right.

    Skips candidates while vertices only become visible, reports the
    candidate where a vertex first becomes invisible, then ignores further
    invisibility events until the next visibility event.  Returns indices
    of reported candidates.
    """
    reported = []
    skipping_invisible = False
    for idx, events in enumerate(event_lists):
        hit = False
        for kind in events:
            if kind == BECOMES_VISIBLE:
                skipping_invisible = False
            elif kind == BECOMES_INVISIBLE and not skipping_invisible:
                hit = True
                skipping_invisible = True
        if hit:
            reported.append(idx)
    return reported


def edge_filter(terrain: Terrain,
                candidates: Sequence[GuardCandidate]) -> list[GuardCandidate]:
    """Drop edge-interior candidates that are not inclusion-maximal with
    respect to entirely seen edges.

    Needs only the direction annotations carried by the candidates, not any
    visibility region.  Vertices are always retained.
    """
    by_edge: dict[int, list[GuardCandidate]] = {}
    keep: list[GuardCandidate] = []
    for c in candidates:
        if c.is_vertex():
            keep.append(c)
        else:
            by_edge.setdefault(c.location.edge, []).append(c)
    for edge_cands in by_edge.values():
        events = [_edge_events(c) for c in edge_cands]
        for idx in sweep_edge_events(events):
            keep.append(edge_cands[idx])
    keep.sort(key=lambda c: c.x)
    return reindex(keep)


def dominates(region: VisibilityRegion, other: VisibilityRegion) -> bool:
    """True when ``other``'s region is contained in ``region``'s."""
    return intervals_subset(other.intervals, region.intervals)


def domination_filter(candidates: Sequence[GuardCandidate],
                      regions: Sequence[VisibilityRegion]
                      ) -> tuple[list[GuardCandidate], list[VisibilityRegion]]:
    """Remove candidates dominated by an x-neighbor.

    One left-to-right pass, then one right-to-left pass, each cascading
    through removals so chains of locally dominated candidates disappear.
    Mutual domination (equal regions) keeps the leftmost candidate, making
    the output deterministic.
    """
    assert len(candidates) == len(regions)

    def stack_pass(pairs, current_is_right: bool):
        kept: list = []
        for cand, reg in pairs:
            drop = False
            while kept:
                _, top = kept[-1]
                if top.intervals == reg.intervals:
                    if current_is_right:
                        drop = True  # equal regions: keep the left one
                        break
                    kept.pop()
                    continue
                if intervals_subset(reg.intervals, top.intervals):
                    drop = True
                    break
                if intervals_subset(top.intervals, reg.intervals):
                    kept.pop()
                    continue
                break
            if not drop:
                kept.append((cand, reg))
        return kept

    forward = stack_pass(zip(candidates, regions), True)
    backward = stack_pass(reversed(forward), False)
    survivors = list(reversed(backward))
    kept_cands = reindex(c for c, _ in survivors)
    kept_regions = [r for _, r in survivors]
    return kept_cands, kept_regions
