"""Exact minimum piercing of a polygon family, used as ground truth.

Any piercing point can be slid to a vertex of the intersection of the sets
it pierces, and such a vertex is either a polygon vertex or a crossing of two
polygon edges.  Minimizing over that finite candidate set is therefore exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ._setcover import min_cover, reduce_candidates
from .geom import ConvexPolygon, Point, point_in_polygon, segment_crossing
from .instance import Family


@dataclass
class PiercingSolution:
    tau: int
    points: list = field(default_factory=list)
    optimal: bool = True


def _sets_of(family) -> Sequence[ConvexPolygon]:
    return family.sets if isinstance(family, Family) else list(family)


def _bbox(P: ConvexPolygon):
    xs = [v.x for v in P.vertices]
    ys = [v.y for v in P.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_meet(a, b) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def candidate_points(family) -> list[Point]:
    """Polygon vertices followed by pairwise edge crossings, first-seen order."""
    sets = _sets_of(family)
    seen: dict[Point, None] = {}
    for P in sets:
        for v in P.vertices:
            seen.setdefault(v)
    boxes = [_bbox(P) for P in sets]
    edges = [P.edges() for P in sets]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not _boxes_meet(boxes[i], boxes[j]):
                continue
            for e in edges[i]:
                for g in edges[j]:
                    p = segment_crossing(e, g)
                    if p is not None:
                        seen.setdefault(p)
    return list(seen)


def coverage_masks(family, points: Sequence[Point]) -> list[int]:
    sets = _sets_of(family)
    boxes = [_bbox(P) for P in sets]
    masks = []
    for p in points:
        m = 0
        for k, P in enumerate(sets):
            b = boxes[k]
            if b[0] <= p.x <= b[2] and b[1] <= p.y <= b[3] and point_in_polygon(p, P):
                m |= 1 << k
        masks.append(m)
    return masks


def min_piercing(family, upper_bound: Optional[int] = None) -> PiercingSolution:
    """Exact piercing number by branch-and-bound set cover over candidates.

    With ``upper_bound`` the search is restricted to piercing sets of at most
    that size; if none exists a greedy piercing set is returned and flagged
    ``optimal=False``.
    """
    sets = _sets_of(family)
    if not sets:
        return PiercingSolution(0, [], True)
    pts = candidate_points(sets)
    masks = coverage_masks(sets, pts)
    keep = reduce_candidates(masks)
    universe = (1 << len(sets)) - 1
    cover, optimal = min_cover(universe, [masks[i] for i in keep], upper_bound)
    chosen = [pts[keep[i]] for i in cover]
    return PiercingSolution(len(chosen), chosen, optimal)


def verify_piercing(family, points: Iterable[Point]) -> bool:
    """True iff every set contains at least one of ``points`` (closed, exact)."""
    pts = list(points)
    return all(any(point_in_polygon(p, P) for p in pts) for P in _sets_of(family))
