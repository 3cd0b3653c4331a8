"""Piercing a (4,3)-family by at most nine points, with a certificate.

The family is scaled into the disk of radius 7/8 and the simplex is searched
for an easy or a hard point.  An easy point leaves at most two regions that
hold whole sets; those are pierced directly and the rest is reduced to a
2-interval problem on the two chords.  A hard point gives the chord crossing
``c`` plus at most two points for each of four classes of sets that avoid
``c``.  Every step whose guarantee can be checked is checked and logged.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional

from .. import oracle
from ..errors import ConstructionIncomplete, InvariantViolation, PreconditionError
from ..geom import (
    ConvexPolygon,
    Point,
    Similarity,
    clip_segment_param,
    intersect_all,
    point_in_polygon,
    polygon_intersect,
    scale_to_unit_disk,
)
from ..instance import Family, IntersectionTable, check_43
from ..kkm import (
    ChordConfig,
    KkmOutcome,
    Relation,
    WitnessIndex,
    chord_config,
    region_relation,
    search,
    simplex_point,
)
from ..two_interval import TwoInterval, TwoIntervalFamily, min_pierce
from .cases import Classification, classify, interval_order
from .curves import SupportCurve, support_line, two_component_curve
from .frame import Frame, components, frame_for

log = logging.getLogger(__name__)

MODES = ("hybrid", "constructive", "oracle")
BOUND = 9


@dataclass
class CheckRecord:
    name: str
    ok: bool
    detail: str = ""


class InvariantLog:
    """Outcome of every runtime check made while building a certificate."""

    def __init__(self):
        self.records: list[CheckRecord] = []

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        self.records.append(CheckRecord(name, ok, detail))
        if not ok:
            log.warning("check %s failed: %s", name, detail)
        return ok

    def failures(self) -> list:
        return [r for r in self.records if not r.ok]

    def summary(self) -> dict:
        out: dict[str, list[int]] = {}
        for r in self.records:
            out.setdefault(r.name, [0, 0])[0 if r.ok else 1] += 1
        return out


@dataclass
class FallbackEvent:
    stage: str
    reason: str
    points: int


@dataclass
class EasyResult:
    occupied: dict
    anchors: list
    remaining: tuple
    two_intervals: Optional[TwoIntervalFamily]
    interval_points: list
    points: list


@dataclass
class ClassPartition:
    contains_c: tuple
    classes: tuple


@dataclass
class ClassResult:
    region: int
    members: tuple
    points: list
    method: str
    case: Optional[str] = None
    pattern: Optional[str] = None
    mirrored: bool = False
    curves: tuple = ()
    two_intervals: Optional[TwoIntervalFamily] = None


@dataclass
class PiercingCertificate:
    family: Family
    mode: str
    path: str
    points: list
    scaled_points: list
    transform: Similarity
    kkm: Optional[KkmOutcome] = None
    easy: Optional[EasyResult] = None
    partition: Optional[ClassPartition] = None
    classes: list = field(default_factory=list)
    fallbacks: list = field(default_factory=list)
    checks: InvariantLog = field(default_factory=InvariantLog)
    verified: bool = False

    @property
    def constructive(self) -> bool:
        return not self.fallbacks


def _unique(points) -> list:
    return list(dict.fromkeys(points))


# --------------------------------------------------------------------------
# easy points


def _chord_family(sets, config: ChordConfig, members) -> TwoIntervalFamily:
    items = []
    for k in members:
        t1 = clip_segment_param(config.chord1, sets[k])
        t2 = clip_segment_param(config.chord2, sets[k])
        if t1 is None and t2 is None:
            raise InvariantViolation("easy-structure", f"set {k} lies in no region yet misses both chords")
        items.append(TwoInterval(t1, t2, k))
    return TwoIntervalFamily(items, ("chord f0f2", "chord f1f3"))


def easy_path(sets, config: ChordConfig) -> EasyResult:
    """At most eight points for a family with no witness triple in any region."""
    occupied = {}
    for i in range(1, 5):
        inside = tuple(k for k, P in enumerate(sets) if region_relation(config, i, P) is Relation.CONTAINED_OPEN)
        if inside:
            occupied[i] = inside
    if len(occupied) > 2 or any(len(v) > 2 for v in occupied.values()):
        raise InvariantViolation("easy-structure", f"regions holding whole sets: {occupied}")
    anchors = []
    for i, ks in occupied.items():
        if len(ks) == 1:
            anchors.append(sets[ks[0]].vertices[0])
            continue
        meet = polygon_intersect(sets[ks[0]], sets[ks[1]])
        if meet is not None:
            anchors.append(meet.vertices[0])
        elif len(occupied) == 1:
            anchors.extend(sets[k].vertices[0] for k in ks)
        else:
            raise InvariantViolation("easy-structure", f"two disjoint sets inside region {i} and another region occupied")
    remaining = tuple(k for k, P in enumerate(sets) if not any(point_in_polygon(a, P) for a in anchors))
    fam2 = None
    ipoints = []
    points = list(anchors)
    if remaining:
        fam2 = _chord_family(sets, config, remaining)
        sol = min_pierce(fam2)
        if sol.tau > 6:
            raise InvariantViolation("easy-structure", f"chord 2-intervals need {sol.tau} points")
        ipoints = sol.points
        for axis, u in ipoints:
            seg = config.chord1 if axis == 1 else config.chord2
            points.append(seg.point_at(u))
    return EasyResult(occupied, anchors, remaining, fam2, ipoints, _unique(points))


# --------------------------------------------------------------------------
# hard points


def partition_classes(sets, config: ChordConfig) -> ClassPartition:
    """Sets through ``c``; every other set joins the class of each region it avoids."""
    through, classes = [], ([], [], [], [])
    for k, P in enumerate(sets):
        if point_in_polygon(config.c, P):
            through.append(k)
            continue
        avoided = [i for i in range(1, 5) if region_relation(config, i, P) is Relation.DISJOINT]
        if not avoided:
            raise InvariantViolation("class-partition", f"set {k} avoids c but meets all four regions")
        for i in avoided:
            classes[i - 1].append(k)
    return ClassPartition(tuple(through), tuple(tuple(c) for c in classes))


def _witness_curves(frame: Frame, sets, witness):
    traces, comps = {}, {}
    for w in witness:
        comps[w] = components(sets[w], frame)
        traces[w] = [cp.trace for cp in comps[w]]
    return comps, interval_order(traces)


def _pair_meets(curves, F: ConvexPolygon) -> bool:
    return any(T.trace(F) for T in curves)


def _transversal(spec, frame, sets, comps, roles, checks, pairs) -> SupportCurve:
    kind = spec[0]
    if kind in ("r", "l"):
        w = roles[spec[1]]
        return support_line(frame, sets[w], comps[w][0], kind, f"S{spec[1]}^{kind}")
    if kind == "S":
        w = roles[spec[1]]
        first, second = comps[w]
        curve, ok = two_component_curve(frame, sets[w], first, second, f"S'{spec[1]}")
        checks.record("sprime-halfspace", ok, f"set {w}")
        return curve
    raise PreconditionError(f"unknown transversal spec {spec!r}")


def _separator(spec, frame, sets, comps, roles, other: SupportCurve, pairs) -> SupportCurve:
    _, i, j = spec
    wi, wj = roles[i], roles[j]
    options = (
        support_line(frame, sets[wi], comps[wi][0], "r", f"S{i}^r(I{i}1)"),
        support_line(frame, sets[wj], comps[wj][1], "l", f"S{j}^l(I{j}2)"),
    )
    for T in options:
        if all(_pair_meets((other, T), F) for F in pairs):
            return T
    raise InvariantViolation("transversal-coverage", "neither separating line covers every pair")


def pierce_class(sets, members, T1: SupportCurve, T2: SupportCurve):
    """At most two points on ``T1`` or ``T2`` meeting every set of a class.

    Raises ``InvariantViolation`` if a polyline trace is not an interval or the
    induced 2-intervals are not pairwise intersecting.
    """
    items = []
    for k in members:
        parts = []
        for T in (T1, T2):
            tr = T.trace(sets[k])
            if len(tr) > 1:
                raise InvariantViolation("sprime-single-interval", f"set {k} meets {T.label} twice")
            parts.append(tr[0] if tr else None)
        if parts == [None, None]:
            raise InvariantViolation("transversal-coverage", f"set {k} misses both transversals")
        items.append(TwoInterval(parts[0], parts[1], k))
    fam2 = TwoIntervalFamily(items, (T1.label, T2.label))
    for a, b in itertools.combinations(items, 2):
        if not a.meets(b):
            raise InvariantViolation("transversal-coverage", f"sets {a.owner} and {b.owner} share no transversal point")
    sol = min_pierce(fam2)
    pts = [(T1 if axis == 1 else T2).point_at(u) for axis, u in sol.points]
    return pts, fam2


def solve_class(sets, config: ChordConfig, region: int, members, witness, table: IntersectionTable,
                checks: InvariantLog) -> ClassResult:
    if not members:
        return ClassResult(region, (), [], "empty")
    if len(members) == 1:
        return ClassResult(region, tuple(members), [sets[members[0]].vertices[0]], "single")
    for a, b in itertools.combinations(members, 2):
        F = table.pair(a, b)
        hits = 0 if F is None else sum(polygon_intersect(F, sets[w]) is not None for w in witness)
        checks.record("class-pairs-meet-two-witnesses", hits >= 2, f"region {region}, sets {a},{b}: {hits}")
    if any(region_relation(config, region, sets[w]) is Relation.CONTAINED_OPEN for w in witness):
        common = intersect_all(sets[k] for k in members)
        if common is None:
            raise InvariantViolation("helly", f"class {region} has no common point")
        return ClassResult(region, tuple(members), [common.vertices[0]], "helly")

    pairs = [table.pair(a, b) for a, b in itertools.combinations(members, 2)]
    if any(F is None for F in pairs):
        raise InvariantViolation("class-pairs-meet-two-witnesses", f"class {region} is not pairwise intersecting")
    frame = frame_for(config, region)
    comps, tokens = _witness_curves(frame, sets, witness)
    cls = classify(tokens)
    if cls is None:
        frame = frame.mirror()
        comps, tokens = _witness_curves(frame, sets, witness)
        cls = classify(tokens)
    if cls is None:
        pattern = " ".join(f"{t.owner}:{t.part}" for t in tokens)
        raise InvariantViolation("witness-order", f"order {pattern} matches no case")

    def build(spec, other=None):
        if spec[0] == "sep":
            return _separator(spec, frame, sets, comps, cls.roles, other, pairs)
        return _transversal(spec, frame, sets, comps, cls.roles, checks, pairs)

    T1 = build(cls.t1)
    T2 = build(cls.t2, T1)
    covered = all(_pair_meets((T1, T2), F) for F in pairs)
    checks.record("transversal-coverage", covered, f"region {region}, case {cls.case}")
    pts, fam2 = pierce_class(sets, members, T1, T2)
    checks.record("class-two-points", len(pts) <= 2, f"region {region}: {len(pts)}")
    if len(pts) > 2:
        raise InvariantViolation("class-two-points", f"class {region} needed {len(pts)} points")
    return ClassResult(region, tuple(members), pts, "two-interval", cls.case, cls.pattern,
                       frame.mirrored, (T1, T2), fam2)


def _face_checks(index: WitnessIndex, x, checks: InvariantLog):
    for i in range(4):
        rest = [v for k, v in enumerate(x) if k != i]
        total = sum(rest)
        y = [v / total for v in rest]
        y.insert(i, 0)
        mv = index.membership(chord_config(simplex_point(y)))
        checks.record("kkm-face", not mv.in_A[i], f"face x{i + 1}=0")


# --------------------------------------------------------------------------
# driver


def pierce_all(family: Family, mode: str = "hybrid", max_depth: int = 3) -> PiercingCertificate:
    """Pierce ``family`` with at most nine points and return the certificate.

    ``mode``: ``hybrid`` falls back to the exact oracle when a constructive
    step fails (and records it), ``constructive`` raises instead, ``oracle``
    skips the construction.
    """
    if mode not in MODES:
        raise PreconditionError(f"mode must be one of {MODES}")
    if len(family) < 4:
        raise PreconditionError("need at least 4 sets")
    sets, T = scale_to_unit_disk(family.sets)
    table = IntersectionTable(sets)
    report = check_43(Family(sets), table)
    if not report.satisfies_43:
        raise PreconditionError(f"sets {report.violating_quadruple} violate the (4,3)-property")
    cert = PiercingCertificate(family, mode, "Fallback", [], [], T)

    def fallback(stage: str, reason: str, members=None, bound=BOUND, lemma="nine-point-bound"):
        if mode == "constructive":
            raise ConstructionIncomplete(f"{stage}: {reason}")
        sub = sets if members is None else [sets[k] for k in members]
        sol = oracle.min_piercing(sub, upper_bound=bound)
        cert.fallbacks.append(FallbackEvent(stage, reason, sol.tau))
        log.info("oracle fallback at %s (%s): %d points", stage, reason, sol.tau)
        if sol.tau > bound:
            raise InvariantViolation(lemma, f"{stage}: oracle needs {sol.tau} > {bound}")
        return sol.points

    points = None
    if mode == "oracle":
        points = fallback("oracle", "oracle mode")
    else:
        index = WitnessIndex(Family(sets, family.name), table)
        out = search(Family(sets, family.name), max_depth, index)
        cert.kkm = out
        if out.kind == "Easy":
            try:
                cert.easy = easy_path(sets, out.config)
                points = cert.easy.points
                cert.path = "Easy"
                cert.checks.record("point-budget", len(points) <= 8, f"easy: {len(points)}")
            except InvariantViolation as e:
                cert.checks.record(e.lemma, False, e.message)
                if mode == "constructive":
                    raise
                points = fallback("easy", str(e))
        elif out.kind == "Hard":
            points = _hard(sets, out, index, table, cert, fallback, mode)
        else:
            points = fallback("search", f"no easy or hard point up to depth {max_depth}")

    cert.scaled_points = _unique(points)
    cert.points = [T.inverse(p) for p in cert.scaled_points]
    cert.verified = oracle.verify_piercing(family, cert.points)
    cert.checks.record("piercing-certificate", cert.verified, f"{len(cert.points)} points")
    if not cert.verified:
        raise InvariantViolation("piercing-certificate", "returned points miss a set")
    if len(cert.points) > BOUND:
        raise InvariantViolation("nine-point-bound", f"{len(cert.points)} points")
    return cert


def _hard(sets, out: KkmOutcome, index, table, cert, fallback, mode) -> list:
    config = out.config
    checks = cert.checks
    _face_checks(index, out.point, checks)
    cert.path = "Hard"
    try:
        part = partition_classes(sets, config)
    except InvariantViolation as e:
        checks.record(e.lemma, False, e.message)
        if mode == "constructive":
            raise
        return fallback("partition", str(e))
    cert.partition = part
    points = [config.c]
    for i in range(1, 5):
        members = part.classes[i - 1]
        witness = out.membership.witnesses[i - 1]
        try:
            res = solve_class(sets, config, i, members, witness, table, checks)
        except InvariantViolation as e:
            checks.record(e.lemma, False, f"region {i}: {e.message}")
            if mode == "constructive":
                raise
            pts = fallback(f"class {i}", str(e), members, 2, "class-two-points")
            res = ClassResult(i, tuple(members), pts, "oracle")
        cert.classes.append(res)
        points.extend(res.points)
    checks.record("point-budget", len(_unique(points)) <= BOUND, f"hard: {len(points)}")
    return points
