"""Chord frames centred on one region, the polyline ``Z`` and components.

In a frame the distinguished region is always ``R1``: it is bounded by the
arc from ``f0`` to ``f1`` and by ``Z = [f1, c] + [c, f0]``.  Closed regions
are sign patterns of the two chord lines::

    R1: L1 >= 0, L2 <= 0     R2: L1 <= 0, L2 <= 0
    R3: L1 <= 0, L2 >= 0     R4: L1 >= 0, L2 >= 0
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import InvariantViolation, PreconditionError
from ..geom import (
    ONE,
    ConvexPolygon,
    HalfPlane,
    Point,
    Segment,
    clip_halfplanes,
    clip_segment_param,
    line_through,
    point_in_polygon,
)
from ..kkm import ChordConfig

_SIGNS = {1: (1, -1), 2: (-1, -1), 3: (-1, 1), 4: (1, 1)}


def _oriented(p: Point, q: Point, toward: Point) -> HalfPlane:
    H = line_through(p, q)
    v = H.value(toward)
    if v == 0:
        raise PreconditionError("degenerate chord configuration")
    return H if v > 0 else H.flipped()


@dataclass(frozen=True)
class Frame:
    f: tuple
    c: Point
    region: int
    mirrored: bool = False

    @classmethod
    def build(cls, f, c, region, mirrored=False) -> "Frame":
        return cls(tuple(f), c, region, mirrored)

    @property
    def L1(self) -> HalfPlane:
        f0, f1, _, f3 = self.f
        return _oriented(f1, f3, f0)

    @property
    def L2(self) -> HalfPlane:
        f0, _, f2, f3 = self.f
        return _oriented(f0, f2, f3)

    def closed_region(self, k: int) -> tuple:
        s1, s2 = _SIGNS[k]
        L1, L2 = self.L1, self.L2
        return (L1 if s1 > 0 else L1.flipped(), L2 if s2 > 0 else L2.flipped())

    def open_region(self, k: int) -> tuple:
        return tuple(H.as_open() for H in self.closed_region(k))

    def original_region(self, k: int) -> int:
        """Index, in the unrotated configuration, of this frame's region ``k``."""
        if self.mirrored:
            k = {1: 1, 2: 4, 3: 3, 4: 2}[k]
        return (self.region - 1 + k - 1) % 4 + 1

    def mirror(self) -> "Frame":
        f0, f1, f2, f3 = self.f
        return Frame((f1, f0, f3, f2), self.c, self.region, not self.mirrored)

    # -- the polyline Z, parametrised by u in [0, 2] -------------------------

    @property
    def z_segments(self) -> tuple:
        return Segment(self.f[1], self.c), Segment(self.c, self.f[0])

    def z_point(self, u) -> Point:
        a, b = self.z_segments
        return a.point_at(u) if u <= 1 else b.point_at(u - 1)

    def z_trace(self, P: ConvexPolygon) -> list:
        """Parameter intervals of ``P`` on ``Z`` (at most two, merged at ``c``)."""
        a, b = self.z_segments
        out = []
        ta = clip_segment_param(a, P)
        if ta is not None:
            out.append(ta)
        tb = clip_segment_param(b, P)
        if tb is not None:
            tb = (tb[0] + 1, tb[1] + 1)
            if out and out[-1][1] == tb[0]:
                out[-1] = (out[-1][0], tb[1])
            else:
                out.append(tb)
        return out


def frame_for(config: ChordConfig, i: int) -> Frame:
    """Frame whose ``R1`` is the configuration's region ``i``."""
    F = config.f
    f = (F[(i - 1) % 4], F[i % 4], F[(i + 1) % 4], F[(i + 2) % 4])
    return Frame(f, config.c, i, False)


@dataclass(frozen=True)
class Component:
    """A connected piece of ``C`` outside the open region ``R1``.

    ``parts`` are convex polygons whose union is the component; ``trace`` is
    the parameter interval ``(l, r)`` of its intersection with ``Z``.
    """

    parts: tuple
    trace: tuple

    def vertices(self):
        for P in self.parts:
            yield from P.vertices

    def on_line(self, H: HalfPlane) -> bool:
        return all(H.on_line(v) for v in self.vertices())

    def within(self, H: HalfPlane) -> bool:
        return all(H.value(v) >= 0 for v in self.vertices())


def components(P: ConvexPolygon, frame: Frame) -> list:
    """Components of ``P`` minus the open region ``R1``, ordered along ``Z``.

    ``P`` must meet ``R1`` without lying inside it.  Two components occur
    exactly when ``P`` misses the closed region ``R3`` but meets both ``R2``
    and ``R4``; each is then convex.
    """
    L1, L2 = frame.L1, frame.L2
    left = clip_halfplanes(P, [L1.flipped()])   # R2 and R3 side
    right = clip_halfplanes(P, [L2])            # R3 and R4 side
    mid = clip_halfplanes(P, frame.closed_region(3))
    trace = frame.z_trace(P)
    if not trace:
        raise InvariantViolation("z-trace", "a witness set outside R1 misses Z")
    if mid is None and left is not None and right is not None:
        if len(trace) != 2:
            raise InvariantViolation("z-trace", "two components but Z-trace is not split")
        return [Component((left,), trace[0]), Component((right,), trace[1])]
    if len(trace) != 1:
        raise InvariantViolation("z-trace", "connected remainder with a split Z-trace")
    parts = tuple(Q for Q in (
        clip_halfplanes(P, frame.closed_region(2)), mid, clip_halfplanes(P, frame.closed_region(4)),
    ) if Q is not None)
    return [Component(parts, trace[0])]


def contains_c(P: ConvexPolygon, frame: Frame) -> bool:
    return point_in_polygon(frame.c, P)
