"""Exact rational planar geometry.

Every coordinate is a ``gmpy2.mpq``; no operation in this module ever rounds.
Convex polygons are stored counterclockwise, in strictly convex position,
starting at their lexicographically smallest vertex, so two polygons describing
the same point set compare equal.  Segments (two vertices) and single points
(one vertex) are valid degenerate polygons.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from gmpy2 import mpq

from .errors import DomainError, PreconditionError

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


def Q(value) -> Rational:
    """Convert ``value`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` and strings such as ``"3/4"`` or ``"-2"``.
    Floats are refused so that rounding cannot leak into the pipeline.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    if isinstance(value, (int, Fraction)):
        return mpq(value)
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


class Point(NamedTuple):
    x: Rational
    y: Rational

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def pt(x, y) -> Point:
    return Point(Q(x), Q(y))


class Segment(NamedTuple):
    p: Point
    q: Point

    def point_at(self, t) -> Point:
        return Point(self.p.x + t * (self.q.x - self.p.x), self.p.y + t * (self.q.y - self.p.y))

    @property
    def degenerate(self) -> bool:
        return self.p == self.q


class HalfPlane(NamedTuple):
    """The locus ``a*x + b*y + c >= 0`` (closed) or ``> 0`` (open)."""

    a: Rational
    b: Rational
    c: Rational
    closed: bool = True

    def value(self, p: Point) -> Rational:
        return self.a * p.x + self.b * p.y + self.c

    def contains(self, p: Point) -> bool:
        v = self.a * p.x + self.b * p.y + self.c
        return v >= 0 if self.closed else v > 0

    def flipped(self) -> "HalfPlane":
        return HalfPlane(-self.a, -self.b, -self.c, self.closed)

    def as_open(self) -> "HalfPlane":
        return HalfPlane(self.a, self.b, self.c, False)

    def as_closed(self) -> "HalfPlane":
        return HalfPlane(self.a, self.b, self.c, True)

    def on_line(self, p: Point) -> bool:
        return self.a * p.x + self.b * p.y + self.c == 0


def line_through(p: Point, q: Point, closed: bool = True) -> HalfPlane:
    """Halfplane bounded by line pq, positive on the left of the direction p->q."""
    if p == q:
        raise PreconditionError("a line needs two distinct points")
    dx, dy = q.x - p.x, q.y - p.y
    return HalfPlane(-dy, dx, dy * p.x - dx * p.y, closed)


def line_with_direction(p: Point, d: tuple, closed: bool = True) -> HalfPlane:
    dx, dy = d
    if dx == 0 and dy == 0:
        raise PreconditionError("zero direction vector")
    return HalfPlane(-dy, dx, dy * p.x - dx * p.y, closed)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p)."""
    v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (v > 0) - (v < 0)


def cross(o: Point, a: Point, b: Point) -> Rational:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull without collinear vertices (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


class ConvexPolygon:
    """A compact convex polygon given by its vertices.

    Three or more vertices must be in strictly convex counterclockwise
    position; two vertices describe a segment, one vertex a point.
    """

    __slots__ = ("vertices", "_halfplanes")

    def __init__(self, vertices: Sequence[Point], check: bool = True):
        vs = [v if isinstance(v, Point) else pt(*v) for v in vertices]
        if not vs:
            raise PreconditionError("a polygon needs at least one vertex")
        if check:
            _validate(vs)
        # canonical rotation: lexicographically smallest vertex first
        k = min(range(len(vs)), key=vs.__getitem__)
        self.vertices: tuple[Point, ...] = tuple(vs[k:] + vs[:k])
        self._halfplanes: Optional[tuple[HalfPlane, ...]] = None

    @classmethod
    def hull(cls, points: Iterable) -> "ConvexPolygon":
        pts = [p if isinstance(p, Point) else pt(*p) for p in points]
        return cls(convex_hull(pts), check=False)

    @classmethod
    def box(cls, x0, y0, x1, y1) -> "ConvexPolygon":
        return cls.hull([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        inner = ", ".join(f"({v.x}, {v.y})" for v in self.vertices)
        return f"ConvexPolygon([{inner}])"

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def edges(self) -> list[Segment]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        if len(vs) == 2:
            return [Segment(vs[0], vs[1])]
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def halfplanes(self) -> tuple[HalfPlane, ...]:
        """Closed halfplanes whose intersection is exactly this polygon."""
        if self._halfplanes is None:
            self._halfplanes = tuple(_polygon_halfplanes(self.vertices))
        return self._halfplanes

    def centroid(self) -> Point:
        """Vertex average (not the area centroid); always inside the polygon."""
        n = len(self.vertices)
        return Point(sum(v.x for v in self.vertices) / n, sum(v.y for v in self.vertices) / n)

    def transformed(self, fn) -> "ConvexPolygon":
        return ConvexPolygon([fn(v) for v in self.vertices], check=False)


def _validate(vs: list[Point]) -> None:
    n = len(vs)
    if len(set(vs)) != n:
        raise PreconditionError("polygon vertices must be distinct")
    if n < 3:
        return
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        for j in range(n):
            if j == i or j == (i + 1) % n:
                continue
            if orient(a, b, vs[j]) <= 0:
                raise PreconditionError(
                    "vertices are not in strictly convex counterclockwise position"
                )


def _polygon_halfplanes(vs: Sequence[Point]) -> list[HalfPlane]:
    if len(vs) >= 3:
        return [line_through(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    if len(vs) == 2:
        p, q = vs
        dx, dy = q.x - p.x, q.y - p.y
        side = line_through(p, q)
        return [
            side,
            side.flipped(),
            HalfPlane(dx, dy, -(dx * p.x + dy * p.y)),
            HalfPlane(-dx, -dy, dx * q.x + dy * q.y),
        ]
    p = vs[0]
    return [
        HalfPlane(ONE, ZERO, -p.x),
        HalfPlane(-ONE, ZERO, p.x),
        HalfPlane(ZERO, ONE, -p.y),
        HalfPlane(ZERO, -ONE, p.y),
    ]


def clip_halfplane(P: ConvexPolygon, H: HalfPlane) -> Optional[ConvexPolygon]:
    """``P`` intersected with ``H``; ``None`` when empty.

    For an open halfplane the intersection is not closed; its closure is
    returned, which equals the closed clip whenever the open clip is nonempty.
    """
    vs = P.vertices
    vals = [H.a * v.x + H.b * v.y + H.c for v in vs]
    hi = max(vals)
    if hi < 0 or (not H.closed and hi == 0):
        return None
    if min(vals) >= 0:
        return P
    out: list[Point] = []
    n = len(vs)
    for i in range(n):
        v, hv = vs[i], vals[i]
        j = (i + 1) % n
        w, hw = vs[j], vals[j]
        if hv >= 0:
            out.append(v)
        if (hv > 0 > hw) or (hv < 0 < hw):
            t = hv / (hv - hw)
            out.append(Point(v.x + t * (w.x - v.x), v.y + t * (w.y - v.y)))
    return ConvexPolygon(convex_hull(out), check=False)


def clip_halfplanes(P: Optional[ConvexPolygon], hs: Iterable[HalfPlane]) -> Optional[ConvexPolygon]:
    for H in hs:
        if P is None:
            return None
        P = clip_halfplane(P, H)
    return P


def polygon_intersect(P: ConvexPolygon, Q: ConvexPolygon) -> Optional[ConvexPolygon]:
    """Exact intersection of two convex polygons; ``None`` when disjoint."""
    if len(Q) > len(P):
        P, Q = Q, P
    if Q.is_point:
        return Q if point_in_polygon(Q.vertices[0], P) else None
    return clip_halfplanes(P, Q.halfplanes())


def intersect_all(polys: Iterable[ConvexPolygon]) -> Optional[ConvexPolygon]:
    it = iter(polys)
    acc = next(it, None)
    for P in it:
        if acc is None:
            return None
        acc = polygon_intersect(acc, P)
    return acc


def point_in_polygon(p: Point, P: ConvexPolygon, mode: str = "closed") -> bool:
    if mode == "closed":
        for H in P.halfplanes():
            if H.a * p.x + H.b * p.y + H.c < 0:
                return False
        return True
    if mode == "open":
        if len(P) < 3:
            return False
        for H in P.halfplanes():
            if H.a * p.x + H.b * p.y + H.c <= 0:
                return False
        return True
    raise PreconditionError(f"unknown membership mode {mode!r}")


def clip_line_param(origin: Point, direction: tuple, P: ConvexPolygon, lo=None, hi=None):
    """Parameter interval ``[t0, t1]`` of ``origin + t*direction`` inside ``P``.

    ``lo``/``hi`` optionally bound the parameter (``None`` = unbounded).
    Returns ``None`` when the line (or the bounded piece) misses ``P``.
    """
    dx, dy = direction
    for H in P.halfplanes():
        a = H.a * origin.x + H.b * origin.y + H.c
        b = H.a * dx + H.b * dy
        if b == 0:
            if a < 0:
                return None
            continue
        t = -a / b
        if b > 0:
            if lo is None or t > lo:
                lo = t
        else:
            if hi is None or t < hi:
                hi = t
        if lo is not None and hi is not None and lo > hi:
            return None
    return lo, hi


def clip_segment_param(seg: Segment, P: ConvexPolygon):
    """Parameter interval within [0, 1] of the part of ``seg`` inside ``P``."""
    d = (seg.q.x - seg.p.x, seg.q.y - seg.p.y)
    if d == (0, 0):
        return (ZERO, ZERO) if point_in_polygon(seg.p, P) else None
    return clip_line_param(seg.p, d, P, ZERO, ONE)


def line_intersection(p1: Point, d1: tuple, p2: Point, d2: tuple) -> Optional[Point]:
    """Intersection of two parametric lines; ``None`` if parallel."""
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    t = ((p2.x - p1.x) * d2[1] - (p2.y - p1.y) * d2[0]) / den
    return Point(p1.x + t * d1[0], p1.y + t * d1[1])


def segment_crossing(a: Segment, b: Segment) -> Optional[Point]:
    """The unique common point of two segments, if they meet in exactly one point."""
    d1 = (a.q.x - a.p.x, a.q.y - a.p.y)
    d2 = (b.q.x - b.p.x, b.q.y - b.p.y)
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    ex, ey = b.p.x - a.p.x, b.p.y - a.p.y
    t = (ex * d2[1] - ey * d2[0]) / den
    if t < 0 or t > 1:
        return None
    u = (ex * d1[1] - ey * d1[0]) / den
    if u < 0 or u > 1:
        return None
    return Point(a.p.x + t * d1[0], a.p.y + t * d1[1])


def point_segment_dist_sq(p: Point, s: Segment) -> Rational:
    dx, dy = s.q.x - s.p.x, s.q.y - s.p.y
    L = dx * dx + dy * dy
    if L == 0:
        t = ZERO
    else:
        t = ((p.x - s.p.x) * dx + (p.y - s.p.y) * dy) / L
        t = min(ONE, max(ZERO, t))
    qx, qy = s.p.x + t * dx - p.x, s.p.y + t * dy - p.y
    return qx * qx + qy * qy


def polygon_distance_sq(P: ConvexPolygon, R: ConvexPolygon) -> Rational:
    """Squared Euclidean distance between two convex polygons (0 if they meet)."""
    if polygon_intersect(P, R) is not None:
        return ZERO
    best = None
    for A, B in ((P, R), (R, P)):
        segs = B.edges() or [Segment(B.vertices[0], B.vertices[0])]
        for v in A.vertices:
            for s in segs:
                d = point_segment_dist_sq(v, s)
                if best is None or d < best:
                    best = d
    return best


def circle_param(t) -> Point:
    """Rational point on the unit circle, traversed clockwise from (1, 0).

    ``[0, 1/2]`` covers the lower semicircle through the tangent half-angle
    substitution ``s = t / (1/2 - t)``; ``(1/2, 1]`` is its mirror image in
    the x-axis, so that ``f(0) = f(1) = (1, 0)``.
    """
    t = Q(t)
    if t < 0 or t > 1:
        raise DomainError(f"circle parameter {t} outside [0, 1]")
    if t == HALF:
        return Point(-ONE, ZERO)
    upper = t > HALF
    u = 1 - t if upper else t
    s = u / (HALF - u)
    den = 1 + s * s
    x, y = (1 - s * s) / den, -2 * s / den
    return Point(x, -y) if upper else Point(x, y)


def supporting_line_at(P: ConvexPolygon, p: Point) -> HalfPlane:
    """A closed halfplane containing ``P`` whose boundary line passes through ``p``.

    Edge-interior points get the edge line.  At a vertex the line direction is
    ``a*|b|^2 + b*|a|^2`` for incoming edge ``a`` and outgoing edge ``b``: a
    positive combination, hence strictly inside the cone of supporting
    directions, and free of square roots.
    """
    vs = P.vertices
    if len(vs) == 1:
        if p != vs[0]:
            raise PreconditionError("point is not on the polygon boundary")
        return HalfPlane(ZERO, ONE, -p.y)
    if len(vs) == 2:
        if orient(vs[0], vs[1], p) != 0 or clip_segment_param(Segment(p, p), P) is None:
            raise PreconditionError("point is not on the segment")
        return line_through(vs[0], vs[1])
    n = len(vs)
    for i, v in enumerate(vs):
        if v == p:
            prev, nxt = vs[i - 1], vs[(i + 1) % n]
            a = (v.x - prev.x, v.y - prev.y)
            b = (nxt.x - v.x, nxt.y - v.y)
            la = a[0] * a[0] + a[1] * a[1]
            lb = b[0] * b[0] + b[1] * b[1]
            d = (a[0] * lb + b[0] * la, a[1] * lb + b[1] * la)
            return line_with_direction(v, d)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if orient(a, b, p) == 0:
            lo_x, hi_x = sorted((a.x, b.x))
            lo_y, hi_y = sorted((a.y, b.y))
            if lo_x <= p.x <= hi_x and lo_y <= p.y <= hi_y:
                return line_through(a, b)
    raise PreconditionError("point is not on the polygon boundary")


class Similarity(NamedTuple):
    """``p -> scale * (p - center)``."""

    scale: Rational
    cx: Rational
    cy: Rational

    def forward(self, p: Point) -> Point:
        return Point(self.scale * (p.x - self.cx), self.scale * (p.y - self.cy))

    def inverse(self, p: Point) -> Point:
        return Point(p.x / self.scale + self.cx, p.y / self.scale + self.cy)


DISK_RADIUS = mpq(7, 8)


def scale_to_unit_disk(polys: Sequence[ConvexPolygon]):
    """Map a family into the disk of radius 7/8 by a rational similarity.

    The bounding box center goes to the origin and the box half-width ``w``
    is scaled to ``7/12``; since ``sqrt(2) < 3/2`` every vertex then lies
    within ``7/8`` of the origin.
    """
    if not polys:
        raise PreconditionError("cannot scale an empty family")
    xs = [v.x for P in polys for v in P.vertices]
    ys = [v.y for P in polys for v in P.vertices]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    w = max(max(xs) - cx, max(ys) - cy)
    scale = ONE if w == 0 else mpq(7, 12) / w
    T = Similarity(scale, cx, cy)
    return [P.transformed(T.forward) for P in polys], T


def inside_disk(p: Point, radius=DISK_RADIUS) -> bool:
    return p.x * p.x + p.y * p.y <= radius * radius


def _inscribed_polygon(m: int) -> ConvexPolygon:
    return ConvexPolygon.hull(circle_param(mpq(k, m)) for k in range(m))


# Rational polygon inscribed in the unit circle.  Its inradius exceeds 0.96,
# so it contains the disk of radius DISK_RADIUS where all scaled sets live.
UNIT_DISK_POLYGON = _inscribed_polygon(16)
