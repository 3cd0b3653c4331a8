"""Families of convex polygons: (4,3)-property checks and seeded generators."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import GenerationError, PreconditionError
from .geom import (
    ConvexPolygon,
    Point,
    Q,
    polygon_distance_sq,
    polygon_intersect,
    point_in_polygon,
)


@dataclass(frozen=True)
class Family:
    sets: tuple[ConvexPolygon, ...]
    name: str = ""
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def subfamily(self, indices: Sequence[int], name: str = "") -> "Family":
        return Family(tuple(self.sets[i] for i in indices), name or self.name, self.seed)


@dataclass
class PropertyReport:
    satisfies_43: bool
    violating_quadruple: Optional[tuple[int, int, int, int]]
    checked_quadruples: int


class IntersectionTable:
    """Lazily memoized pairwise and triple intersections of a family."""

    def __init__(self, sets: Sequence[ConvexPolygon]):
        self.sets = list(sets)
        self._pairs: dict[tuple[int, int], Optional[ConvexPolygon]] = {}
        self._triples: dict[tuple[int, int, int], Optional[ConvexPolygon]] = {}

    def pair(self, i: int, j: int) -> Optional[ConvexPolygon]:
        key = (i, j) if i < j else (j, i)
        if key not in self._pairs:
            self._pairs[key] = polygon_intersect(self.sets[key[0]], self.sets[key[1]])
        return self._pairs[key]

    def triple(self, i: int, j: int, k: int) -> Optional[ConvexPolygon]:
        key = tuple(sorted((i, j, k)))
        if key not in self._triples:
            P = self.pair(key[0], key[1])
            self._triples[key] = None if P is None else polygon_intersect(P, self.sets[key[2]])
        return self._triples[key]

    def intersecting_triples(self) -> list[tuple[int, int, int]]:
        return [t for t in itertools.combinations(range(len(self.sets)), 3) if self.triple(*t) is not None]

    def replace(self, i: int, P: ConvexPolygon) -> None:
        self.sets[i] = P
        self._pairs = {k: v for k, v in self._pairs.items() if i not in k}
        self._triples = {k: v for k, v in self._triples.items() if i not in k}


def _violating_quadruple(table: IntersectionTable):
    n = len(table.sets)
    checked = 0
    for quad in itertools.combinations(range(n), 4):
        checked += 1
        if not any(table.triple(*t) is not None for t in itertools.combinations(quad, 3)):
            return quad, checked
    return None, checked


def check_43(family: Family, table: Optional[IntersectionTable] = None) -> PropertyReport:
    """Decide the (4,3)-property exactly.

    Quadruples are scanned in lexicographic order, so the reported violation
    is the lexicographically least one.
    """
    if len(family) < 4:
        raise PreconditionError("the (4,3)-property check needs at least 4 sets")
    table = table or IntersectionTable(family.sets)
    quad, checked = _violating_quadruple(table)
    return PropertyReport(quad is None, quad, checked)


# --------------------------------------------------------------------------
# generators

BOX = 400


def _random_polygon(rng: random.Random, center: tuple[int, int], rmin: float, rmax: float,
                    m: int) -> Optional[ConvexPolygon]:
    """Integer-vertex convex polygon with ``center`` strictly inside, or None."""
    phase = rng.random() * 2 * math.pi
    step = 2 * math.pi / m
    pts = []
    for i in range(m):
        ang = phase + i * step + (rng.random() - 0.5) * 0.7 * step
        r = rmin + rng.random() * (rmax - rmin)
        pts.append((center[0] + round(r * math.cos(ang)), center[1] + round(r * math.sin(ang))))
    P = ConvexPolygon.hull(pts)
    if len(P) < 3 or not point_in_polygon(Point(Q(center[0]), Q(center[1])), P, "open"):
        return None
    return P


def _general_position(pts: list[tuple[int, int]]) -> bool:
    if len(set(pts)) != len(pts):
        return False
    for a, b, c in itertools.combinations(pts, 3):
        if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0:
            return False
    return True


def generate_cluster(k_clusters: int, n_sets: int, spread=mpq(1, 2), seed: int = 0,
                     vertex_budget: int = 8, retry_budget: int = 1000) -> Family:
    """Sets grouped around ``k_clusters`` anchor points.

    Each polygon strictly contains its anchor and has radius between
    ``spread*BOX/2`` and ``spread*BOX``; anchors lie in ``[-BOX, BOX]^2``.
    A violating quadruple is repaired by growing one of its sets so that it
    also contains the anchor already shared by the most sets of the
    quadruple; the repair always terminates because containments only grow.
    """
    if not 1 <= k_clusters <= 3:
        raise PreconditionError("k_clusters must be 1, 2 or 3")
    if n_sets < 4:
        raise PreconditionError("need at least 4 sets")
    if vertex_budget < 3:
        raise PreconditionError("vertex_budget must be at least 3")
    rng = random.Random(seed)
    spread = float(Q(spread))
    rmax = spread * BOX
    rmin = rmax / 2
    while True:
        anchors = [(rng.randint(-BOX, BOX), rng.randint(-BOX, BOX)) for _ in range(k_clusters)]
        if _general_position(anchors):
            break
    owner = [i % k_clusters for i in range(n_sets)]
    rng.shuffle(owner)
    sets = []
    for a in owner:
        for _ in range(retry_budget):
            P = _random_polygon(rng, anchors[a], rmin, rmax, rng.randint(3, vertex_budget))
            if P is not None:
                break
        else:
            raise GenerationError("could not draw a polygon around its anchor")
        sets.append(P)

    anchor_pts = [Point(Q(x), Q(y)) for x, y in anchors]
    bump = max(1, int(rmin) // 4)
    table = IntersectionTable(sets)
    for _ in range(n_sets * k_clusters + 1):
        quad, _ = _violating_quadruple(table)
        if quad is None:
            fam = Family(tuple(table.sets), f"cluster-k{k_clusters}-n{n_sets}-s{seed}", seed)
            return fam
        counts = [sum(point_in_polygon(a, table.sets[i]) for i in quad) for a in anchor_pts]
        best = max(range(k_clusters), key=lambda j: (counts[j], -j))
        a = anchors[best]
        target = next(i for i in quad if not point_in_polygon(anchor_pts[best], table.sets[i]))
        grown = list(table.sets[target].vertices) + [
            Point(Q(a[0] + dx), Q(a[1] + dy)) for dx, dy in ((bump, 0), (-bump, 0), (0, bump), (0, -bump))
        ]
        table.replace(target, ConvexPolygon.hull(grown))
    raise GenerationError("cluster repair did not converge")


INFLATE = mpq(9, 8)


def _inflate(P: ConvexPolygon, factor=INFLATE) -> ConvexPolygon:
    c = P.centroid()
    return P.transformed(lambda v: Point(c.x + factor * (v.x - c.x), c.y + factor * (v.y - c.y)))


def generate_random_43(n_sets: int, vertex_budget: int = 8, seed: int = 0,
                       retry_budget: int = 400) -> Family:
    """Random polygons repaired until the (4,3)-property holds.

    While some quadruple violates the property, the two of its sets at the
    largest mutual distance (ties: lexicographically least pair) are scaled by
    9/8 about their vertex centroids.
    """
    if n_sets < 4:
        raise PreconditionError("need at least 4 sets")
    if vertex_budget < 3:
        raise PreconditionError("vertex_budget must be at least 3")
    rng = random.Random(seed)
    sets = []
    for _ in range(n_sets):
        while True:
            center = (rng.randint(-300, 300), rng.randint(-300, 300))
            rmax = rng.randint(150, 380)
            P = _random_polygon(rng, center, rmax * 0.4, rmax, rng.randint(3, vertex_budget))
            if P is not None:
                break
        sets.append(P)
    table = IntersectionTable(sets)
    for _ in range(retry_budget):
        quad, _ = _violating_quadruple(table)
        if quad is None:
            return Family(tuple(table.sets), f"random-n{n_sets}-s{seed}", seed)
        pairs = list(itertools.combinations(quad, 2))
        dist = {p: polygon_distance_sq(table.sets[p[0]], table.sets[p[1]]) for p in pairs}
        i, j = max(pairs, key=lambda p: (dist[p], [-p[0], -p[1]]))
        table.replace(i, _inflate(table.sets[i]))
        table.replace(j, _inflate(table.sets[j]))
    raise GenerationError(f"(4,3) repair exhausted {retry_budget} rounds")
