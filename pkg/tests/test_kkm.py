import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from pqpierce.errors import PreconditionError
from pqpierce.geom import ConvexPolygon, pt, scale_to_unit_disk
from pqpierce.instance import Family, IntersectionTable, generate_cluster, generate_random_43
from pqpierce.kkm import (
    BARYCENTER,
    Relation,
    WitnessIndex,
    chord_config,
    lattice_schedule,
    membership_Ai,
    region_relation,
    search,
    simplex_point,
)

from conftest import pinned_quadrants, square


def brute_membership(config, family, i):
    """Direct reading of the A_i definition through region_relation."""
    t = IntersectionTable(family.sets)
    for tri in itertools.combinations(range(len(family)), 3):
        if t.triple(*tri) is None:
            continue
        if all(region_relation(config, i, t.pair(a, b)) is Relation.CONTAINED_OPEN
               for a, b in itertools.combinations(tri, 2)):
            return tri
    return None


@st.composite
def simplex_points(draw, zero=None, den=64):
    ks = [draw(st.integers(0, den)) for _ in range(3)]
    ks.sort()
    parts = [ks[0], ks[1] - ks[0], ks[2] - ks[1], den - ks[2]]
    if zero is not None:
        parts[zero] = 0
        total = sum(parts)
        if total == 0:
            parts[(zero + 1) % 4] = 1
            total = 1
        return simplex_point(*(mpq(p, total) for p in parts))
    return simplex_point(*(mpq(p, den) for p in parts))


def test_simplex_point_validation():
    with pytest.raises(PreconditionError):
        simplex_point(mpq(1, 2), mpq(1, 2), 0)
    with pytest.raises(PreconditionError):
        simplex_point(mpq(1, 2), mpq(1, 2), mpq(1, 2), mpq(-1, 2))
    assert simplex_point([1, 0, 0, 0]).prefix() == (0, 1, 1, 1)


def test_barycentric_configuration():
    cfg = chord_config(BARYCENTER)
    assert cfg.f == (pt(1, 0), pt(0, -1), pt(-1, 0), pt(0, 1))
    assert cfg.c == pt(0, 0)
    assert cfg.nondegenerate
    # the regions are the four open quadrants, R1 lower right, clockwise
    probes = [pt(mpq(1, 2), mpq(-1, 2)), pt(mpq(-1, 2), mpq(-1, 2)), pt(mpq(-1, 2), mpq(1, 2)), pt(mpq(1, 2), mpq(1, 2))]
    for i, R in enumerate(cfg.regions):
        for j, p in enumerate(probes):
            assert all(H.value(p) > 0 for H in R) == (i == j)
    # chord line orientation: L1 positive side holds f0, L2 positive side holds f3
    assert cfg.line1.value(cfg.f[0]) > 0 and cfg.line2.value(cfg.f[3]) > 0


def test_vertex_configuration_is_one_full_region():
    cfg = chord_config(simplex_point(1, 0, 0, 0))
    assert cfg.regions[0] == ()
    assert cfg.regions[1:] == (None, None, None)
    P = square(0, 0, mpq(1, 2))
    assert region_relation(cfg, 1, P) is Relation.CONTAINED_OPEN
    assert all(region_relation(cfg, i, P) is Relation.DISJOINT for i in (2, 3, 4))


@given(simplex_points(), st.data())
def test_zero_coordinate_means_empty_region(x, data):
    cfg = chord_config(x)
    for i in range(4):
        assert (cfg.regions[i] is None) == (x[i] == 0)


@given(simplex_points())
def test_nondegenerate_chords_cross_inside(x):
    cfg = chord_config(x)
    if not cfg.nondegenerate:
        return
    assert len(set(cfg.f)) == 4
    c = cfg.c
    for seg in (cfg.chord1, cfg.chord2):
        lo_x, hi_x = sorted((seg.p.x, seg.q.x))
        lo_y, hi_y = sorted((seg.p.y, seg.q.y))
        assert lo_x <= c.x <= hi_x and lo_y <= c.y <= hi_y
        assert c not in (seg.p, seg.q)


@given(simplex_points(), st.integers(-40, 40), st.integers(-40, 40))
def test_regions_partition_off_chord_points(x, a, b):
    p = pt(mpq(a, 50), mpq(b, 50))
    cfg = chord_config(x)
    on_line = any(L is not None and L.value(p) == 0 for L in cfg.base)
    hits = [i for i, R in enumerate(cfg.regions) if R is not None and all(H.value(p) > 0 for H in R)]
    if on_line:
        assert len(hits) <= 1
    else:
        assert len(hits) == 1


def test_region_relation_examples():
    cfg = chord_config(BARYCENTER)
    tiny = ConvexPolygon.box(mpq(89, 100), mpq(-7, 100), mpq(91, 100), mpq(-3, 100))
    assert region_relation(cfg, 1, tiny) is Relation.CONTAINED_OPEN
    assert region_relation(cfg, 3, tiny) is Relation.DISJOINT
    straddle = ConvexPolygon.box(mpq(-1, 10), mpq(-1, 2), mpq(1, 10), mpq(-3, 10))
    assert region_relation(cfg, 1, straddle) is Relation.MEETS
    assert region_relation(cfg, 2, straddle) is Relation.MEETS
    assert region_relation(cfg, 3, straddle) is Relation.DISJOINT
    # touching a chord from one side does not meet the other open region
    touch = ConvexPolygon.box(0, mpq(-1, 2), mpq(1, 10), mpq(-3, 10))
    assert region_relation(cfg, 2, touch) is Relation.DISJOINT
    assert region_relation(cfg, 1, touch) is Relation.MEETS


def test_membership_examples():
    cfg = chord_config(BARYCENTER)
    stacked = Family(tuple(square(mpq(1, 2) + mpq(k, 30), mpq(-1, 2), mpq(1, 10)) for k in range(3)))
    assert membership_Ai(cfg, stacked, 1) == (0, 1, 2)
    assert membership_Ai(cfg, stacked, 2) is None
    crossing = Family(tuple(ConvexPolygon.box(mpq(-1, 2), mpq(-1, 10 + k), mpq(1, 2), mpq(1, 10)) for k in range(4)))
    assert all(membership_Ai(cfg, crossing, i) is None for i in (1, 2, 3, 4))
    # only intersecting triple sits in R2; the fourth set is far away in R4
    four = Family(tuple(square(mpq(-1, 2) + mpq(k, 30), mpq(-1, 2), mpq(1, 10)) for k in range(3))
                  + (square(mpq(1, 2), mpq(1, 2), mpq(1, 10)),))
    assert membership_Ai(cfg, four, 1) is None
    assert membership_Ai(cfg, four, 2) == (0, 1, 2)


@pytest.mark.parametrize("seed", range(12))
def test_membership_matches_definition(seed):
    gen = generate_cluster if seed % 2 else (lambda k, n, seed: generate_random_43(n, seed=seed))
    fam = gen(1 + seed % 3, 6, seed=seed)
    sets, _ = scale_to_unit_disk(fam.sets)
    fam = Family(tuple(sets))
    index = WitnessIndex(fam)
    rng = random.Random(seed)
    pts = [x for _, x in lattice_schedule(0)]
    for _ in range(10):
        ks = sorted(rng.randint(0, 32) for _ in range(3))
        pts.append(simplex_point(*(mpq(v, 32) for v in (ks[0], ks[1] - ks[0], ks[2] - ks[1], 32 - ks[2]))))
    for x in pts:
        cfg = chord_config(x)
        mv = index.membership(cfg)
        for i in range(1, 5):
            assert mv.witnesses[i - 1] == brute_membership(cfg, fam, i)


def test_pinned_quadrants_are_hard_at_the_barycenter():
    fam = pinned_quadrants()
    out = search(fam, max_depth=0)
    assert out.kind == "Hard"
    assert out.point == BARYCENTER and out.evaluations == 1
    assert out.membership.witnesses == ((0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11))


def test_star_family_is_easy_at_the_barycenter():
    fam = Family(tuple(square(mpq(1, 3) + mpq(k, 40), mpq(-3, 10), mpq(1, 5)) for k in range(5)))
    # all pairwise intersections sit inside R1, so x is in A1 only
    assert search(fam, max_depth=0).membership.in_A == (True, False, False, False)
    star = Family(tuple(square(mpq(k, 40), mpq(k, 50), mpq(1, 5)) for k in range(5)))
    out = search(star, max_depth=0)
    assert out.kind == "Easy" and out.depth == 0 and out.evaluations == 1


def test_depth_zero_schedule():
    pts = [x for _, x in lattice_schedule(0)]
    assert len(pts) == 11 and pts[0] == BARYCENTER
    assert sum(1 for x in pts if max(x) == 1) == 4
    assert sum(1 for x in pts if sorted(x) == [0, 0, mpq(1, 2), mpq(1, 2)]) == 6


def test_schedule_has_no_repeats():
    pts = [x for _, x in lattice_schedule(3)]
    assert len(pts) == len(set(pts))
    # every composition of 16 into four parts, plus nothing else
    assert len(pts) == 969


def test_exhausted_reports_fewest_memberships():
    fam = Family(tuple(square(mpq(1, 2) + mpq(k, 30), mpq(-1, 2), mpq(1, 10)) for k in range(3)))
    # a lone cluster always lies in exactly one region's A_i: neither easy nor hard
    out = search(fam, max_depth=0)
    assert out.kind == "Exhausted"
    assert out.membership.count == 1 and out.evaluations == 11


@given(st.integers(0, 3), st.data())
def test_face_condition(i, data):
    fam = pinned_quadrants()
    x = data.draw(simplex_points(zero=i))
    assert membership_Ai(chord_config(x), fam, i + 1) is None


def _margin(cfg, fam, witnesses):
    """Smallest squared-distance-like margin of the witness pairs to their region lines."""
    t = IntersectionTable(fam.sets)
    m = None
    for i, tri in enumerate(witnesses):
        for a, b in itertools.combinations(tri, 2):
            for v in t.pair(a, b).vertices:
                for H in cfg.regions[i]:
                    d2 = H.value(v) ** 2 / (H.a ** 2 + H.b ** 2)
                    m = d2 if m is None else min(m, d2)
    return m


def test_openness_of_hard_points():
    fam = pinned_quadrants()
    cfg = chord_config(BARYCENTER)
    mv = WitnessIndex(fam).membership(cfg)
    d2 = _margin(cfg, fam, mv.witnesses)
    # rational delta with delta^2 <= d2
    delta = mpq(1, 1)
    while delta * delta > d2:
        delta /= 2
    rng = random.Random(5)
    index = WitnessIndex(fam)
    for _ in range(200):
        v = [mpq(rng.randint(-100, 100), 100) for _ in range(3)]
        v.append(-sum(v))
        norm1 = sum(abs(c) for c in v) or 1
        step = [c * delta / (8 * norm1) for c in v]
        x = simplex_point(*(a + b for a, b in zip(BARYCENTER, step)))
        assert index.membership(chord_config(x)).count == 4
