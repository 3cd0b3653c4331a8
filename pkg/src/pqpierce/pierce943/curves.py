"""Transversal curves: supporting lines at trace endpoints and ``S'`` polylines."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvariantViolation
from ..geom import (
    UNIT_DISK_POLYGON,
    ConvexPolygon,
    HalfPlane,
    Point,
    Segment,
    clip_halfplanes,
    clip_line_param,
    clip_segment_param,
    line_through,
    supporting_line_at,
)
from .frame import Component, Frame


@dataclass(frozen=True)
class SupportCurve:
    """A line ``points[0] + u*(points[1]-points[0])`` or a polyline.

    Polyline parameters run over ``[k, k+1]`` on the ``k``-th piece.
    """

    label: str
    kind: str  # "Line" | "Polyline"
    points: tuple
    rule: str = ""

    def point_at(self, u) -> Point:
        if self.kind == "Line":
            p, q = self.points
            return Point(p.x + u * (q.x - p.x), p.y + u * (q.y - p.y))
        k = min(int(u), len(self.points) - 2)
        return Segment(self.points[k], self.points[k + 1]).point_at(u - k)

    def trace(self, P: ConvexPolygon) -> list:
        """Parameter intervals of ``P`` on the curve (merged where they touch)."""
        if self.kind == "Line":
            p, q = self.points
            t = clip_line_param(p, (q.x - p.x, q.y - p.y), P)
            return [] if t is None else [t]
        out = []
        for k in range(len(self.points) - 1):
            t = clip_segment_param(Segment(self.points[k], self.points[k + 1]), P)
            if t is None:
                continue
            t = (t[0] + k, t[1] + k)
            if out and out[-1][1] == t[0]:
                out[-1] = (out[-1][0], t[1])
            else:
                out.append(t)
        return out


def _line_curve(label: str, H: HalfPlane, through: Point, rule: str) -> SupportCurve:
    # direction (b, -a) keeps the side a*x + b*y + c > 0 on the left
    d = (H.b, -H.a)
    return SupportCurve(label, "Line", (through, Point(through.x + d[0], through.y + d[1])), rule)


def support_line(frame: Frame, P: ConvexPolygon, comp: Component, side: str, label: str) -> SupportCurve:
    """``S^l`` or ``S^r`` of a component: a supporting line of ``P`` at the trace end."""
    L1, L2 = frame.L1, frame.L2
    u = comp.trace[0] if side == "l" else comp.trace[1]
    p = frame.z_point(u)
    f0, f1, f2, f3 = frame.f
    if comp.on_line(L1):
        return _line_curve(label, L1, f1, "on L1")
    if comp.on_line(L2):
        return _line_curve(label, L2, f0, "on L2")
    if side == "r" and u == 1 and comp.within(L2.flipped()):
        return _line_curve(label, L2, f0, "r at c, below L2")
    if side == "l" and u == 1 and comp.within(L1):
        return _line_curve(label, L1, f1, "l at c, above L1")
    return _line_curve(label, supporting_line_at(P, p), p, "supporting")


def _far_end(curve: SupportCurve, region: tuple) -> Point:
    p, q = curve.points
    box = clip_halfplanes(UNIT_DISK_POLYGON, region)
    t = None if box is None else clip_line_param(p, (q.x - p.x, q.y - p.y), box)
    if t is None:
        return p
    lo, hi = t
    u = lo if lo < 0 else hi
    return curve.point_at(u)


def two_component_curve(frame: Frame, P: ConvexPolygon, first: Component, second: Component,
                        label: str) -> tuple:
    """``S'`` for a set whose remainder outside ``R1`` has two components.

    Returns the polyline and a flag telling whether every vertex lies in the
    closed halfplane bounded by ``r(I1) l(I2)`` that contains ``f0`` and ``f1``.
    """
    f0, f1 = frame.f[0], frame.f[1]
    r1 = frame.z_point(first.trace[1])
    l2 = frame.z_point(second.trace[0])
    if first.on_line(frame.L1):
        e1 = f1
    else:
        e1 = _far_end(support_line(frame, P, first, "r", ""), frame.closed_region(2))
    if second.on_line(frame.L2):
        e2 = f0
    else:
        e2 = _far_end(support_line(frame, P, second, "l", ""), frame.closed_region(4))
    verts = []
    for v in (e1, r1, l2, e2):
        if not verts or verts[-1] != v:
            verts.append(v)
    if len(verts) < 2:
        raise InvariantViolation("sprime-polyline", "degenerate S' polyline")
    curve = SupportCurve(label, "Polyline", tuple(verts), "two components")
    H = line_through(r1, l2)
    s0, s1 = H.value(f0), H.value(f1)
    if s0 < 0 or s1 < 0:
        H = H.flipped()
    ok = all(H.value(v) >= 0 for v in (f0, f1) + tuple(verts))
    return curve, ok
