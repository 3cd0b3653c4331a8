"""JSON documents for instances and certificates.

Rationals are written as ``"p/q"`` strings (integers as plain strings), so a
document never passes through floating point and round-trips exactly.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import PreconditionError
from .geom import ConvexPolygon, Point, Q
from .instance import Family
from .oracle import verify_piercing

INSTANCE_FORMAT = "pqpierce-instance"
CERTIFICATE_FORMAT = "pqpierce-certificate"


def rat(v) -> str:
    return str(Q(v))


def point_doc(p: Point) -> list:
    return [rat(p.x), rat(p.y)]


def parse_point(doc) -> Point:
    if not isinstance(doc, (list, tuple)) or len(doc) != 2:
        raise PreconditionError(f"a point is a pair of rationals, got {doc!r}")
    try:
        return Point(Q(doc[0]), Q(doc[1]))
    except (TypeError, ValueError) as e:
        raise PreconditionError(f"bad rational in {doc!r}: {e}") from None


def parse_polygon(doc) -> ConvexPolygon:
    if not isinstance(doc, list) or not doc:
        raise PreconditionError("a set is a nonempty list of vertices")
    vs = [parse_point(v) for v in doc]
    try:
        return ConvexPolygon(vs)
    except PreconditionError:
        # clockwise input is accepted and normalized
        return ConvexPolygon(vs[::-1])


def instance_doc(family: Family) -> dict:
    doc = {"format": INSTANCE_FORMAT, "name": family.name}
    if family.seed is not None:
        doc["seed"] = family.seed
    doc["sets"] = [[point_doc(v) for v in P.vertices] for P in family.sets]
    return doc


def parse_instance(doc) -> Family:
    if not isinstance(doc, dict) or "sets" not in doc:
        raise PreconditionError("an instance document needs a 'sets' list")
    if not isinstance(doc["sets"], list):
        raise PreconditionError("'sets' must be a list")
    sets = tuple(parse_polygon(s) for s in doc["sets"])
    seed = doc.get("seed")
    return Family(sets, str(doc.get("name", "")), seed if isinstance(seed, int) else None)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_json(doc: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(doc))


def read_json(path: Union[str, Path]) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise PreconditionError(f"{path}: not valid JSON ({e})") from None


def load_instance(path) -> Family:
    return parse_instance(read_json(path))


def save_instance(family: Family, path) -> None:
    write_json(instance_doc(family), path)


# --------------------------------------------------------------------------
# certificates


def _curve_doc(T) -> dict:
    return {"label": T.label, "kind": T.kind, "rule": T.rule, "points": [point_doc(p) for p in T.points]}


def _two_interval_doc(fam) -> list:
    if fam is None:
        return []
    out = []
    for it in fam.items:
        out.append({
            "set": it.owner,
            "part1": None if it.part1 is None else [rat(v) for v in it.part1],
            "part2": None if it.part2 is None else [rat(v) for v in it.part2],
        })
    return out


def certificate_doc(cert) -> dict:
    doc = {
        "format": CERTIFICATE_FORMAT,
        "instance": instance_doc(cert.family),
        "bound": 9,
        "mode": cert.mode,
        "path": cert.path,
        "constructive": cert.constructive,
        "points": [point_doc(p) for p in cert.points],
        "scaled_points": [point_doc(p) for p in cert.scaled_points],
        "transform": {"scale": rat(cert.transform.scale), "center": [rat(cert.transform.cx), rat(cert.transform.cy)]},
    }
    k = cert.kkm
    doc["kkm"] = None if k is None else {
        "kind": k.kind,
        "point": [rat(v) for v in k.point],
        "memberships": list(k.membership.in_A),
        "witnesses": [None if w is None else list(w) for w in k.membership.witnesses],
        "depth": k.depth,
        "evaluations": k.evaluations,
        "c": point_doc(k.config.c) if k.config is not None else None,
    }
    e = cert.easy
    doc["easy"] = None if e is None else {
        "occupied": {str(i): list(v) for i, v in e.occupied.items()},
        "anchors": [point_doc(p) for p in e.anchors],
        "remaining": list(e.remaining),
        "two_intervals": _two_interval_doc(e.two_intervals),
        "interval_points": [[axis, rat(u)] for axis, u in e.interval_points],
    }
    p = cert.partition
    doc["partition"] = None if p is None else {
        "contains_c": list(p.contains_c),
        "classes": [list(c) for c in p.classes],
    }
    doc["classes"] = [{
        "region": r.region,
        "members": list(r.members),
        "method": r.method,
        "case": r.case,
        "pattern": r.pattern,
        "mirrored": r.mirrored,
        "curves": [_curve_doc(T) for T in r.curves],
        "two_intervals": _two_interval_doc(r.two_intervals),
        "points": [point_doc(q) for q in r.points],
    } for r in cert.classes]
    doc["fallbacks"] = [{"stage": f.stage, "reason": f.reason, "points": f.points} for f in cert.fallbacks]
    doc["checks"] = {name: {"passed": a, "failed": b} for name, (a, b) in cert.checks.summary().items()}
    doc["failures"] = [{"check": r.name, "detail": r.detail} for r in cert.checks.failures()]
    doc["verified"] = cert.verified
    return doc


def verify_certificate_doc(doc) -> bool:
    """Re-check a certificate document using nothing but its own contents."""
    if not isinstance(doc, dict) or doc.get("format") != CERTIFICATE_FORMAT:
        raise PreconditionError("not a certificate document")
    family = parse_instance(doc["instance"])
    points = [parse_point(p) for p in doc["points"]]
    return len(points) <= doc.get("bound", 9) and verify_piercing(family, points)
