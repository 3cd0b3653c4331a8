"""Deterministic SVG drawings of a chord configuration, a family and a certificate.

Everything is computed exactly; coordinates are rounded to four decimals only
when the SVG text is written, so equal inputs give byte-identical files.
"""
from __future__ import annotations

from typing import Optional

from gmpy2 import mpq

from .geom import ConvexPolygon, Point, circle_param, clip_line_param, scale_to_unit_disk
from .instance import Family
from .kkm import BARYCENTER, ChordConfig, chord_config

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
VIEW = mpq(6, 5)
_FRAME = ConvexPolygon.box(-VIEW, -VIEW, VIEW, VIEW)


def _f(v) -> str:
    s = f"{float(v):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(p: Point) -> str:
    return f"{_f(p.x)},{_f(-p.y)}"


def _line_ends(p: Point, q: Point):
    d = (q.x - p.x, q.y - p.y)
    t = clip_line_param(p, d, _FRAME)
    if t is None:
        return None
    a, b = t
    return Point(p.x + a * d[0], p.y + a * d[1]), Point(p.x + b * d[0], p.y + b * d[1])


def render_svg(family: Optional[Family] = None, cert=None, config: Optional[ChordConfig] = None,
               size: int = 640) -> str:
    """SVG text showing the unit circle, chords, regions, sets, curves and points.

    Sets are drawn in the scaled frame used by the piercing pipeline.  The
    configuration defaults to the certificate's simplex point, else the
    barycenter.
    """
    if config is None:
        if cert is not None and cert.kkm is not None and cert.kkm.config is not None:
            config = cert.kkm.config
        else:
            config = chord_config(BARYCENTER)
    sets = []
    if cert is not None:
        sets = [P.transformed(cert.transform.forward) for P in cert.family.sets]
    elif family is not None and len(family):
        sets, _ = scale_to_unit_disk(family.sets)

    w = _f(2 * VIEW)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_f(-VIEW)} {_f(-VIEW)} {w} {w}">',
        '<rect x="-1.2" y="-1.2" width="2.4" height="2.4" fill="white"/>',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.006"/>',
    ]
    for k, P in enumerate(sets):
        col = PALETTE[k % len(PALETTE)]
        vs = " ".join(_xy(v) for v in P.vertices)
        out.append(f'<polygon points="{vs}" fill="{col}" fill-opacity="0.25" stroke="{col}" '
                   f'stroke-width="0.006"><title>set {k}</title></polygon>')
    for seg in (config.chord1, config.chord2):
        out.append(f'<line x1="{_f(seg.p.x)}" y1="{_f(-seg.p.y)}" x2="{_f(seg.q.x)}" y2="{_f(-seg.q.y)}" '
                   'stroke="black" stroke-width="0.008"/>')
    ts = config.x.prefix() + (mpq(1),)
    for i in range(4):
        if config.x[i] == 0:
            continue
        m = circle_param((ts[i] + ts[i + 1]) / 2)
        out.append(f'<text x="{_f(m.x * mpq(21, 20))}" y="{_f(-m.y * mpq(21, 20))}" font-size="0.07" '
                   f'text-anchor="middle" dominant-baseline="middle">R{i + 1}</text>')
    for k, f in enumerate(config.f):
        out.append(f'<circle cx="{_f(f.x)}" cy="{_f(-f.y)}" r="0.012" fill="black"><title>f{k}</title></circle>')
    out.append(f'<circle cx="{_f(config.c.x)}" cy="{_f(-config.c.y)}" r="0.012" fill="none" stroke="black" '
               'stroke-width="0.005"><title>c</title></circle>')
    if cert is not None:
        for res in cert.classes:
            for T in res.curves:
                if T.kind == "Line":
                    ends = _line_ends(*T.points)
                    if ends is None:
                        continue
                    pts = " ".join(_xy(p) for p in ends)
                else:
                    pts = " ".join(_xy(p) for p in T.points)
                out.append(f'<polyline points="{pts}" fill="none" stroke="#444" stroke-width="0.006" '
                           f'stroke-dasharray="0.03 0.015"><title>{T.label} (class {res.region})</title></polyline>')
        d = mpq(1, 40)
        for p in cert.scaled_points:
            out.append(f'<path d="M{_f(p.x - d)},{_f(-p.y - d)} L{_f(p.x + d)},{_f(-p.y + d)} '
                       f'M{_f(p.x - d)},{_f(-p.y + d)} L{_f(p.x + d)},{_f(-p.y - d)}" '
                       'stroke="black" stroke-width="0.01"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
