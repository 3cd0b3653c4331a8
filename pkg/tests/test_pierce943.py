import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from pqpierce.errors import ConstructionIncomplete, InvariantViolation, OrderAmbiguous, PreconditionError
from pqpierce.geom import ConvexPolygon, Point, point_in_polygon, pt
from pqpierce.instance import Family, IntersectionTable, generate_cluster, generate_random_43
from pqpierce.kkm import BARYCENTER, Relation, chord_config, region_relation, simplex_point
from pqpierce.oracle import min_piercing, verify_piercing
from pqpierce.pierce943 import (
    CASE_TABLE,
    InvariantLog,
    Token,
    classify,
    components,
    easy_path,
    frame_for,
    interval_order,
    partition_classes,
    pierce_all,
    pierce_class,
    solve_class,
    support_line,
    two_component_curve,
)
from pqpierce.pierce943.curves import SupportCurve

from conftest import disjoint4, proper_polygons, square, star_family

CFG = chord_config(BARYCENTER)
FRAME = frame_for(CFG, 1)  # R1 = open lower right quadrant, Z runs (0,-1) -> (0,0) -> (1,0)


def q(a, b=1):
    return mpq(a, b)


def needle(p, r, w=q(1, 50)):
    pts = []
    for a in (p, r):
        pts += [Point(a[0], a[1]), Point(a[0] + w, a[1]), Point(a[0], a[1] + w)]
    return ConvexPolygon.hull(pts)


def reflect(P):
    """Mirror image across y = -x, the bisector of R1 in the barycentric configuration."""
    return ConvexPolygon.hull([Point(-v.y, -v.x) for v in P.vertices])


P0 = (q(1, 10), q(-1, 10))
# three needles through P0: the third crosses Z twice, around c
WITNESS_22 = [
    needle(P0, (q(-2, 10), q(-7, 10))),
    needle(P0, (q(-1, 10), q(-2, 100))),
    needle((q(-3, 10), q(-5, 10)), (q(5, 10), q(3, 10))),
]
CLASS_22 = [
    ConvexPolygon.box(q(-3, 10), q(-8, 10), 0, 0),
    ConvexPolygon.box(q(-25, 100), q(-6, 10), 0, q(5, 100)),
    ConvexPolygon.hull([(q(-1, 2), q(-3, 10)), (0, q(-3, 10))]),
]
# three needles through P0, each crossing Z once, in order along Z
WITNESS_1 = [
    needle(P0, (q(-1, 10), q(-7, 10))),
    needle(P0, (q(-1, 10), q(-1, 10))),
    needle(P0, (q(5, 10), q(2, 10))),
]


# ---------------------------------------------------------------- frame

def test_frame_orientation():
    assert FRAME.L1.value(pt(1, 0)) > 0 and FRAME.L2.value(pt(0, 1)) > 0
    assert FRAME.z_point(0) == pt(0, -1) and FRAME.z_point(1) == pt(0, 0) and FRAME.z_point(2) == pt(1, 0)
    probe = {1: pt(q(1, 2), q(-1, 2)), 2: pt(q(-1, 2), q(-1, 2)), 3: pt(q(-1, 2), q(1, 2)), 4: pt(q(1, 2), q(1, 2))}
    for k, p in probe.items():
        assert all(H.value(p) > 0 for H in FRAME.open_region(k))
        assert FRAME.original_region(k) == k


def test_frame_rotation_and_mirror():
    fr = frame_for(CFG, 3)
    # region 3 of the configuration becomes R1 of the frame
    assert all(H.value(pt(q(-1, 2), q(1, 2))) > 0 for H in fr.open_region(1))
    m = FRAME.mirror()
    assert m.f[:2] == (FRAME.f[1], FRAME.f[0])
    assert m.original_region(2) == 4 and m.original_region(4) == 2
    assert m.mirror() == FRAME


def test_components_single_when_containing_c():
    comps = components(square(0, 0, q(1, 10)), FRAME)
    assert len(comps) == 1
    assert comps[0].trace == (q(9, 10), q(11, 10))


def test_components_split_around_c():
    comps = components(WITNESS_22[2], FRAME)
    assert len(comps) == 2
    (l1, r1), (l2, r2) = comps[0].trace, comps[1].trace
    assert r1 < 1 < l2
    # each piece lies in the closure of R2 resp. R4
    assert all(v.x <= 0 and v.y <= 0 for v in comps[0].vertices())
    assert all(v.x >= 0 and v.y >= 0 for v in comps[1].vertices())


def test_components_convex_without_r2():
    # meets R1, R3 and R4 but not R2
    P = ConvexPolygon.hull([(q(1, 5), q(-1, 5)), (q(-1, 5), q(1, 5)), (q(1, 5), q(1, 5))])
    assert region_relation(CFG, 2, P) is Relation.DISJOINT
    comps = components(P, FRAME)
    assert len(comps) == 1 and len(comps[0].trace) == 2


def test_components_need_a_z_trace():
    with pytest.raises(InvariantViolation):
        components(square(q(1, 2), q(-1, 2), q(1, 10)), FRAME)


# ---------------------------------------------------------------- curves

def test_support_line_on_chord_line():
    P = ConvexPolygon.hull([(0, q(-1, 2)), (q(3, 10), q(-1, 5)), (q(3, 10), q(-1, 2))])
    (comp,) = components(P, FRAME)
    assert comp.on_line(FRAME.L1)
    T = support_line(FRAME, P, comp, "r", "T")
    assert T.rule == "on L1"
    assert all(FRAME.L1.on_line(p) for p in T.points)


def test_support_line_at_c_below_L2():
    P = ConvexPolygon.hull([(0, 0), (q(-3, 10), q(-1, 10)), (q(1, 5), q(-3, 10))])
    (comp,) = components(P, FRAME)
    assert comp.trace[1] == 1
    T = support_line(FRAME, P, comp, "r", "T")
    assert T.rule == "r at c, below L2"
    assert all(FRAME.L2.on_line(p) for p in T.points)


def test_support_line_at_c_above_L1():
    P = ConvexPolygon.hull([(0, 0), (q(1, 10), q(3, 10)), (q(3, 10), q(-1, 5))])
    (comp,) = components(P, FRAME)
    assert comp.trace[0] == 1
    T = support_line(FRAME, P, comp, "l", "T")
    assert T.rule == "l at c, above L1"


def test_generic_support_line_supports():
    P = WITNESS_1[0]
    (comp,) = components(P, FRAME)
    for side in "lr":
        T = support_line(FRAME, P, comp, side, "T")
        assert T.rule == "supporting"
        a, b = T.points
        vals = [(b.x - a.x) * (v.y - a.y) - (b.y - a.y) * (v.x - a.x) for v in P.vertices]
        assert all(v >= 0 for v in vals) or all(v <= 0 for v in vals)


def test_two_component_polyline():
    P = WITNESS_22[2]
    first, second = components(P, FRAME)
    T, ok = two_component_curve(FRAME, P, first, second, "S'")
    assert ok
    assert T.kind == "Polyline" and len(T.points) == 4
    # the bridge is [r(I1), l(I2)]
    assert T.points[1] == FRAME.z_point(first.trace[1])
    assert T.points[2] == FRAME.z_point(second.trace[0])
    # outer ends stay in the closed unit disk
    assert all(p.x ** 2 + p.y ** 2 <= 1 for p in T.points)
    assert len(T.trace(P)) == 1


def test_polyline_trace_merges_pieces():
    T = SupportCurve("T", "Polyline", (pt(-1, 0), pt(0, 0), pt(0, 1)))
    assert T.trace(square(0, 0, q(1, 2))) == [(q(1, 2), q(3, 2))]
    assert T.point_at(q(3, 2)) == pt(0, q(1, 2))


# ---------------------------------------------------------------- cases

def tokens(*spec):
    """``spec`` items are (owner, part) in order along Z."""
    return [Token(o, p, q(2 * k), q(2 * k + 1)) for k, (o, p) in enumerate(spec)]


@pytest.mark.parametrize("spec,case,pattern", [
    (((7, 0), (8, 0), (9, 0)), "1", "1 2 3"),
    (((4, 0), (6, 1), (5, 0), (6, 2)), "2.2", "1 31 2 32"),
    (((5, 1), (6, 1), (4, 0), (5, 2), (6, 2)), "3.6", "21 31 1 22 32"),
    (((1, 1), (2, 1), (3, 1), (3, 2), (2, 2), (1, 2)), "4.1", "11 21 31 32 22 12"),
])
def test_case_lookup(spec, case, pattern):
    cls = classify(tokens(*spec))
    assert cls.case == case and cls.pattern == pattern


def test_case_table_transversals():
    assert CASE_TABLE[1]["1 2 3"][1:] == (("r", 1), ("r", 2))
    assert CASE_TABLE[3]["1 21 31 22 32"][2][0] == "sep"
    assert CASE_TABLE[4]["11 21 31 32 22 12"][1:] == (("S", 1), ("S", 2))
    assert sum(len(v) for v in CASE_TABLE.values()) == 16


def test_mirror_pattern_is_not_listed():
    # reversed order of subcase 2.2
    assert classify(tokens((6, 2), (5, 0), (6, 1), (4, 0))) is None


def test_interval_order_rejects_overlaps():
    with pytest.raises(OrderAmbiguous):
        interval_order({1: [(0, 2)], 2: [(1, 3)]})
    toks = interval_order({1: [(q(5), q(6))], 2: [(0, 1), (q(7), q(8))]})
    assert [(t.owner, t.part) for t in toks] == [(2, 1), (1, 0), (2, 2)]


# ---------------------------------------------------------------- easy path and partition

def test_easy_path_star():
    fam = [square(q(1, 10) * k, 0, q(3, 10)) for k in range(3)]
    res = easy_path(fam, CFG)
    assert len(res.points) == 1
    assert verify_piercing(fam, res.points)


def test_easy_path_single_occupied_region():
    inside = square(q(1, 2), q(-1, 2), q(1, 10))
    rest = [ConvexPolygon.hull([(q(-1, 2), q(k, 10)), (q(1, 2), q(k, 10) + q(1, 20))]) for k in range(-3, 3)]
    sets = [inside] + rest
    res = easy_path(sets, CFG)
    assert res.occupied == {1: (0,)}
    assert len(res.anchors) == 1 and point_in_polygon(res.anchors[0], inside)
    assert len(res.points) <= 7 and verify_piercing(sets, res.points)


def test_easy_path_three_disjoint_chord_traces():
    sets = [ConvexPolygon.box(q(-1, 2) + q(3, 10) * k, q(-1, 20), q(-2, 5) + q(3, 10) * k, q(1, 20)) for k in range(3)]
    sets += [square(q(-1, 2), q(-1, 2), q(1, 10)), square(q(1, 2), q(1, 2), q(1, 10))]
    res = easy_path(sets, CFG)
    assert res.two_intervals is not None and len(res.interval_points) == 3
    assert len(res.points) <= 8 and verify_piercing(sets, res.points)


def test_easy_path_rejects_three_occupied_regions():
    sets = [square(q(1, 2), q(-1, 2), q(1, 10)), square(q(-1, 2), q(-1, 2), q(1, 10)), square(q(-1, 2), q(1, 2), q(1, 10))]
    with pytest.raises(InvariantViolation) as e:
        easy_path(sets, CFG)
    assert e.value.lemma == "easy-structure"


def test_partition_examples():
    in_r2 = square(q(-1, 2), q(-1, 2), q(1, 10))
    through_c = square(0, 0, q(1, 10))
    # thin set crossing R1 and R2 only
    thin = ConvexPolygon.hull([(q(-1, 2), q(-1, 2)), (q(1, 2), q(-1, 2) + q(1, 100))])
    part = partition_classes([in_r2, through_c, thin], CFG)
    assert part.contains_c == (1,)
    assert part.classes == ((0,), (), (0, 2), (0, 2))


@settings(max_examples=200)
@given(proper_polygons(), st.sampled_from([BARYCENTER, simplex_point(q(1, 8), q(3, 8), q(1, 4), q(1, 4)),
                                           simplex_point(q(1, 2), q(1, 8), q(1, 8), q(1, 4))]))
def test_every_set_avoiding_c_joins_a_class(P, x):
    cfg = chord_config(x)
    P = P.transformed(lambda v: Point(v.x / 40, v.y / 40))
    part = partition_classes([P], cfg)
    if part.contains_c:
        return
    for i in range(1, 5):
        assert (0 in part.classes[i - 1]) == (region_relation(cfg, i, P) is Relation.DISJOINT)
    assert any(0 in c for c in part.classes)


# ---------------------------------------------------------------- class solving

def _solve(witness, members, region=1, config=CFG):
    sets = list(witness) + list(members)
    checks = InvariantLog()
    res = solve_class(sets, config, region, tuple(range(3, len(sets))), (0, 1, 2), IntersectionTable(sets), checks)
    return sets, res, checks


def test_engineered_witnesses_certify_A1():
    for W in (WITNESS_1, WITNESS_22):
        t = IntersectionTable(W)
        assert t.triple(0, 1, 2) is not None
        assert all(region_relation(CFG, 1, t.pair(a, b)) is Relation.CONTAINED_OPEN
                   for a, b in itertools.combinations(range(3), 2))
        assert all(region_relation(CFG, 1, P) is Relation.MEETS for P in W)


def test_solve_class_case_1():
    members = [ConvexPolygon.box(q(-3, 10), q(-8, 10), 0, q(1, 10)), ConvexPolygon.box(q(-1, 5), q(-3, 4), 0, 0)]
    sets, res, checks = _solve(WITNESS_1, members)
    assert res.case == "1" and res.method == "two-interval" and not res.mirrored
    assert [T.label for T in res.curves] == ["S1^r", "S2^r"]
    assert not checks.failures()
    assert len(res.points) <= 2 and verify_piercing(members, res.points)


def test_solve_class_case_22():
    sets, res, checks = _solve(WITNESS_22, CLASS_22)
    assert res.case == "2.2" and res.pattern == "1 31 2 32"
    assert res.curves[0].kind == "Polyline"
    assert list(checks.summary()["sprime-halfspace"]) == [1, 0]
    assert not checks.failures()
    assert len(res.points) <= 2 and verify_piercing(CLASS_22, res.points)


def test_solve_class_mirrored():
    W = [reflect(P) for P in WITNESS_22]
    members = [reflect(P) for P in CLASS_22]
    sets, res, checks = _solve(W, members)
    assert res.mirrored and res.case == "2.2"
    assert not checks.failures()
    assert len(res.points) <= 2 and verify_piercing(members, res.points)


def test_solve_class_trivial_classes():
    checks = InvariantLog()
    t = IntersectionTable(WITNESS_1)
    assert solve_class(WITNESS_1, CFG, 1, (), (0, 1, 2), t, checks).points == []
    single = solve_class(WITNESS_1 + [square(-1, -1, q(1, 10))], CFG, 1, (3,), (0, 1, 2),
                         IntersectionTable(WITNESS_1 + [square(-1, -1, q(1, 10))]), checks)
    assert single.method == "single" and len(single.points) == 1


def test_solve_class_helly_when_a_witness_lies_in_the_region():
    W = [square(q(1, 2), q(-1, 2), q(1, 10)), needle((q(1, 2), q(-1, 2)), (q(-1, 5), q(-1, 2))),
         needle((q(1, 2), q(-1, 2)), (q(1, 2), q(1, 5)))]
    members = [ConvexPolygon.box(q(-3, 10), q(-6, 10), 0, q(-4, 10)), ConvexPolygon.box(q(-1, 10), q(-55, 100), 0, 0)]
    sets, res, checks = _solve(W, members)
    assert res.method == "helly" and len(res.points) == 1
    assert verify_piercing(members, res.points)


def test_pierce_class_requires_coverage():
    T = SupportCurve("T", "Line", (pt(0, 0), pt(1, 0)))
    far = [square(0, 5, 1), square(0, -5, 1)]
    with pytest.raises(InvariantViolation):
        pierce_class(far, (0, 1), T, T)
    pts, fam2 = pierce_class([square(0, 0, 1), square(1, 0, 1)], (0, 1), T, T)
    assert len(pts) == 1


# ---------------------------------------------------------------- end to end

def test_pierce_all_star():
    cert = pierce_all(star_family())
    assert cert.path == "Easy" and len(cert.points) == 1 and cert.verified and cert.constructive


def test_pierce_all_cluster_example():
    fam = generate_cluster(3, 12, seed=7)
    cert = pierce_all(fam)
    assert cert.verified and len(cert.points) <= 9
    assert min_piercing(fam).tau <= len(cert.points)


@pytest.mark.parametrize("seed", range(8))
def test_pierce_all_modes_agree_on_validity(seed):
    fam = generate_random_43(6 + seed % 4, seed=seed)
    for mode in ("hybrid", "oracle"):
        cert = pierce_all(fam, mode=mode)
        assert cert.verified and len(cert.points) <= 9
    assert pierce_all(fam, mode="oracle").fallbacks[0].stage == "oracle"


def test_pierce_all_preconditions():
    with pytest.raises(PreconditionError):
        pierce_all(disjoint4())
    with pytest.raises(PreconditionError):
        pierce_all(Family(tuple(star_family().sets[:3])))
    with pytest.raises(PreconditionError):
        pierce_all(star_family(), mode="fast")


def test_constructive_mode_refuses_fallback():
    fam = generate_cluster(2, 5, seed=1)
    # no easy or hard point among the eleven depth-0 points
    cert = pierce_all(fam, max_depth=0)
    assert cert.kkm.kind == "Exhausted" and cert.path == "Fallback"
    assert [f.stage for f in cert.fallbacks] == ["search"] and not cert.constructive
    assert cert.verified and len(cert.points) <= 9
    with pytest.raises(ConstructionIncomplete):
        pierce_all(fam, mode="constructive", max_depth=0)
    assert pierce_all(fam, mode="constructive").constructive
