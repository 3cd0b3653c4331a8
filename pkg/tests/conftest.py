import os

from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pqpierce.geom import ConvexPolygon, Point
from pqpierce.instance import Family

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

coords = st.integers(min_value=-30, max_value=30)
points = st.builds(lambda x, y: Point(mpq(x), mpq(y)), coords, coords)


@st.composite
def polygons(draw, min_points=1, max_points=7):
    pts = draw(st.lists(points, min_size=min_points, max_size=max_points))
    return ConvexPolygon.hull(pts)


@st.composite
def proper_polygons(draw):
    """Polygons with nonempty interior: a triangle plus optional extra points."""
    x = draw(coords)
    y = draw(coords)
    w = draw(st.integers(1, 20))
    h = draw(st.integers(1, 20))
    base = [Point(mpq(x), mpq(y)), Point(mpq(x + w), mpq(y)), Point(mpq(x), mpq(y + h))]
    extra = draw(st.lists(points, max_size=4))
    return ConvexPolygon.hull(base + extra)


def square(cx, cy, r) -> ConvexPolygon:
    cx, cy, r = mpq(cx), mpq(cy), mpq(r)
    return ConvexPolygon.box(cx - r, cy - r, cx + r, cy + r)


def star_family(n=6) -> Family:
    """``n`` boxes all containing the origin."""
    sets = [ConvexPolygon.box(-1 - k, -2, 3 + k, 1 + k) for k in range(n)]
    return Family(tuple(sets), "star")


def disjoint4() -> Family:
    return Family(tuple(square(10 * k, 0, 1) for k in range(4)), "disjoint4")


QUADRANT_CENTERS = ((mpq(1, 2), mpq(-1, 2)), (mpq(-1, 2), mpq(-1, 2)),
                    (mpq(-1, 2), mpq(1, 2)), (mpq(1, 2), mpq(1, 2)))


def pinned_quadrants() -> Family:
    """Three overlapping small squares in each quadrant, i.e. in each region
    of the barycentric configuration (R1 is the lower right quadrant)."""
    sets = []
    for cx, cy in QUADRANT_CENTERS:
        for dx, dy in ((0, 0), (mpq(1, 20), 0), (0, mpq(1, 20))):
            sets.append(square(cx + dx, cy + dy, mpq(1, 10)))
    return Family(tuple(sets), "pinned")


# acceptance lines, printed after the test session
ACCEPTANCE: dict = {}


def report(number: int, ok: bool, text: str) -> None:
    ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
