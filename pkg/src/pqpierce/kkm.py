"""Chord configurations on the simplex and the search for easy/hard points.

A point ``x`` of the 3-simplex places four points ``f0..f3`` on the unit
circle at the prefix sums of ``x``.  The chords ``[f0, f2]`` and ``[f1, f3]``
cut the disk into four regions ``R1..R4``, region ``i`` being bounded by the
arc from ``f_{i-1}`` to ``f_i``.  ``x`` lies in ``A_i`` when three sets with a
common point have all their pairwise intersections strictly inside ``R_i``.

``search`` walks a dyadic lattice of the simplex looking for a point in no
``A_i`` (easy) or in all four (hard).
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from gmpy2 import mpq

from .errors import PreconditionError
from .geom import (
    ConvexPolygon,
    HalfPlane,
    Point,
    Q,
    Segment,
    circle_param,
    clip_halfplanes,
    line_intersection,
    line_through,
)
from .instance import Family, IntersectionTable

log = logging.getLogger(__name__)


class SimplexPoint(NamedTuple):
    x1: object
    x2: object
    x3: object
    x4: object

    def prefix(self) -> tuple:
        """Circle parameters ``(0, x1, x1+x2, x1+x2+x3)``."""
        return (mpq(0), self.x1, self.x1 + self.x2, self.x1 + self.x2 + self.x3)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self) + ")"


def simplex_point(*xs) -> SimplexPoint:
    if len(xs) == 1:
        xs = tuple(xs[0])
    if len(xs) != 4:
        raise PreconditionError("a point of the 3-simplex has four coordinates")
    vals = tuple(Q(v) for v in xs)
    if any(v < 0 for v in vals) or sum(vals) != 1:
        raise PreconditionError(f"{vals} is not in the simplex")
    return SimplexPoint(*vals)


BARYCENTER = simplex_point(mpq(1, 4), mpq(1, 4), mpq(1, 4), mpq(1, 4))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class ChordConfig:
    """Exact geometry induced by a simplex point.

    ``regions[i-1]`` is ``None`` when ``R_i`` is empty, otherwise the tuple of
    open halfplanes whose intersection with the open unit disk is ``R_i``
    (empty tuple: the whole disk).  ``line1``/``line2`` are the chord lines
    through ``f1 f3`` and ``f0 f2`` with positive sides containing ``f0`` and
    ``f3`` respectively; they are ``None`` when the chord degenerates.
    """

    x: SimplexPoint
    f: tuple
    chord1: Segment
    chord2: Segment
    c: Point
    regions: tuple
    line1: Optional[HalfPlane]
    line2: Optional[HalfPlane]
    # per region: required signs w.r.t. the unoriented lines (f1f3, f0f2); 0 = free
    signs: tuple = field(repr=False)
    base: tuple = field(repr=False)

    @property
    def nondegenerate(self) -> bool:
        return all(v > 0 for v in self.x)


def chord_config(x: SimplexPoint) -> ChordConfig:
    if not isinstance(x, SimplexPoint):
        x = simplex_point(x)
    ts = x.prefix()
    f = tuple(circle_param(t) for t in ts)
    f0, f1, f2, f3 = f
    b1 = line_through(f1, f3) if f1 != f3 else None
    b2 = line_through(f0, f2) if f0 != f2 else None

    regions, signs = [], []
    bounds = ts + (mpq(1),)
    for i in range(4):
        if x[i] == 0:
            regions.append(None)
            signs.append(None)
            continue
        m = circle_param((bounds[i] + bounds[i + 1]) / 2)
        hs, sg = [], []
        for b in (b1, b2):
            if b is None:
                sg.append(0)
                continue
            s = _sign(b.value(m))
            assert s != 0, "arc midpoint on a chord line"
            hs.append(HalfPlane(b.a, b.b, b.c, False) if s > 0 else b.flipped().as_open())
            sg.append(s)
        regions.append(tuple(hs))
        signs.append(tuple(sg))

    line1 = None
    if b1 is not None and b1.value(f0) != 0:
        line1 = b1 if b1.value(f0) > 0 else b1.flipped()
    line2 = None
    if b2 is not None and b2.value(f3) != 0:
        line2 = b2 if b2.value(f3) > 0 else b2.flipped()

    if b1 is not None and b2 is not None:
        c = line_intersection(f1, (f3.x - f1.x, f3.y - f1.y), f0, (f2.x - f0.x, f2.y - f0.y))
        if c is None:
            c = f0
    elif b1 is None and b2 is not None:
        c = f1
    else:
        c = f0
    return ChordConfig(x, f, Segment(f0, f2), Segment(f1, f3), c, tuple(regions),
                       line1, line2, tuple(signs), (b1, b2))


class Relation(enum.Enum):
    CONTAINED_OPEN = "ContainedOpen"
    DISJOINT = "Disjoint"
    MEETS = "Meets"


def region_relation(config: ChordConfig, i: int, P: ConvexPolygon) -> Relation:
    """How polygon ``P`` (inside the unit disk) sits relative to region ``R_i``."""
    R = config.regions[i - 1]
    if R is None:
        return Relation.DISJOINT
    if all(H.value(v) > 0 for H in R for v in P.vertices):
        return Relation.CONTAINED_OPEN
    clipped = clip_halfplanes(P, [H.as_closed() for H in R])
    if clipped is None:
        return Relation.DISJOINT
    # a convex set has a point strictly inside every H iff it has one per H
    if all(max(H.value(v) for v in clipped.vertices) > 0 for H in R):
        return Relation.MEETS
    return Relation.DISJOINT


@dataclass
class MembershipVector:
    in_A: tuple
    witnesses: tuple

    @property
    def count(self) -> int:
        return sum(self.in_A)


class WitnessIndex:
    """Precomputed intersecting triples of a family, for fast ``A_i`` tests."""

    def __init__(self, family: Family, table: Optional[IntersectionTable] = None):
        self.family = family
        table = table or IntersectionTable(family.sets)
        self.table = table
        self.triples = table.intersecting_triples()
        pairs = sorted({p for t in self.triples for p in itertools.combinations(t, 2)})
        self.pairs = pairs
        vindex: dict[Point, int] = {}
        self.pair_vertices = {}
        for p in pairs:
            poly = table.pair(*p)
            self.pair_vertices[p] = tuple(vindex.setdefault(v, len(vindex)) for v in poly.vertices)
        self.vertices = list(vindex)

    def labels(self, config: ChordConfig) -> dict:
        """Region (1-4) strictly containing each relevant pairwise intersection, else 0."""
        b1, b2 = config.base
        vs = self.vertices
        s1 = [_sign(b1.a * v.x + b1.b * v.y + b1.c) for v in vs] if b1 is not None else None
        s2 = [_sign(b2.a * v.x + b2.b * v.y + b2.c) for v in vs] if b2 is not None else None
        specs = [(i + 1, sg) for i, sg in enumerate(config.signs) if sg is not None]
        out = {}
        for p, idx in self.pair_vertices.items():
            label = 0
            for i, (g1, g2) in specs:
                if g1 and any(s1[k] != g1 for k in idx):
                    continue
                if g2 and any(s2[k] != g2 for k in idx):
                    continue
                label = i
                break
            out[p] = label
        return out

    def membership(self, config: ChordConfig) -> MembershipVector:
        lab = self.labels(config)
        wit = [None, None, None, None]
        for t in self.triples:
            a, b, c = t
            la = lab[(a, b)]
            if la and wit[la - 1] is None and lab[(a, c)] == la and lab[(b, c)] == la:
                wit[la - 1] = t
                if all(w is not None for w in wit):
                    break
        return MembershipVector(tuple(w is not None for w in wit), tuple(wit))


def membership_Ai(config: ChordConfig, family: Family, i: int,
                  index: Optional[WitnessIndex] = None) -> Optional[tuple]:
    """Lexicographically least witness triple certifying ``x in A_i``, or None."""
    index = index or WitnessIndex(family)
    return index.membership(config).witnesses[i - 1]


@dataclass
class KkmOutcome:
    kind: str  # "Easy" | "Hard" | "Exhausted"
    point: SimplexPoint
    membership: MembershipVector
    depth: int
    evaluations: int
    config: Optional[ChordConfig] = None


def lattice_schedule(max_depth: int):
    """Deterministic visiting order: barycenter, then dyadic lattices.

    Depth ``d`` adds the points with coordinates in ``(1/2^(d+1)) Z`` not seen
    at a smaller depth, in lexicographic order of their numerators.
    """
    yield 0, BARYCENTER
    for d in range(max_depth + 1):
        N = 2 ** (d + 1)
        for k1 in range(N + 1):
            for k2 in range(N - k1 + 1):
                for k3 in range(N - k1 - k2 + 1):
                    k4 = N - k1 - k2 - k3
                    ks = (k1, k2, k3, k4)
                    if d > 0 and all(k % 2 == 0 for k in ks):
                        continue
                    x = SimplexPoint(*(mpq(k, N) for k in ks))
                    if x == BARYCENTER:
                        continue
                    yield d, x


def search(family: Family, max_depth: int = 3, index: Optional[WitnessIndex] = None) -> KkmOutcome:
    """First lattice point that is easy (in no ``A_i``) or hard (in all four)."""
    index = index or WitnessIndex(family)
    best = None
    evaluations = 0
    for depth, x in lattice_schedule(max_depth):
        evaluations += 1
        cfg = chord_config(x)
        mv = index.membership(cfg)
        if mv.count == 0:
            log.debug("easy point %s after %d evaluations", x, evaluations)
            return KkmOutcome("Easy", x, mv, depth, evaluations, cfg)
        if mv.count == 4:
            log.debug("hard point %s after %d evaluations", x, evaluations)
            return KkmOutcome("Hard", x, mv, depth, evaluations, cfg)
        if best is None or mv.count < best[2].count:
            best = (depth, x, mv, cfg)
    log.debug("search exhausted after %d evaluations", evaluations)
    return KkmOutcome("Exhausted", best[1], best[2], max_depth, evaluations, best[3])
