"""Inside the hard branch: one class, two transversal curves, two points.

No generated family has reached the hard branch, so this demo builds one
class by hand in the barycentric configuration.  Three thin sets meet at a
point of region 1.  The third crosses Z twice, once on each side of c.  The
class members avoid region 1, and every pair of them meets two witnesses.

Run:  python demos/03_hard_class.py  (writes hard_class.svg)
"""
from pathlib import Path

from gmpy2 import mpq

from pqpierce.geom import ConvexPolygon, Point
from pqpierce.instance import IntersectionTable
from pqpierce.kkm import BARYCENTER, chord_config
from pqpierce.pierce943 import InvariantLog, components, frame_for, solve_class


def needle(p, q, w=mpq(1, 50)):
    pts = []
    for a in (p, q):
        pts += [Point(a[0], a[1]), Point(a[0] + w, a[1]), Point(a[0], a[1] + w)]
    return ConvexPolygon.hull(pts)


cfg = chord_config(BARYCENTER)
meet = (mpq(1, 10), mpq(-1, 10))
witness = [
    needle(meet, (mpq(-1, 5), mpq(-7, 10))),
    needle(meet, (mpq(-1, 10), mpq(-1, 50))),
    needle((mpq(-3, 10), mpq(-1, 2)), (mpq(1, 2), mpq(3, 10))),
]
members = [
    ConvexPolygon.box(mpq(-3, 10), mpq(-4, 5), 0, 0),
    ConvexPolygon.box(mpq(-1, 4), mpq(-3, 5), 0, mpq(1, 20)),
    ConvexPolygon.hull([(mpq(-1, 2), mpq(-3, 10)), (0, mpq(-3, 10))]),
]
sets = witness + members

frame = frame_for(cfg, 1)
for k, W in enumerate(witness):
    comps = components(W, frame)
    print(f"witness {k}: {len(comps)} component(s), Z-traces {[tuple(map(str, c.trace)) for c in comps]}")

log = InvariantLog()
res = solve_class(sets, cfg, 1, (3, 4, 5), (0, 1, 2), IntersectionTable(sets), log)
print(f"order on Z: {res.pattern}  ->  subcase {res.case}")
for T in res.curves:
    print(f"  {T.label}: {T.kind} through {[f'({p.x}, {p.y})' for p in T.points]}")
print("class points:", [f"({p.x}, {p.y})" for p in res.points])
for name, (ok, bad) in log.summary().items():
    print(f"  check {name}: {ok} passed, {bad} failed")

# draw it with a minimal stand-in certificate
from types import SimpleNamespace

from pqpierce.geom import Similarity
from pqpierce.instance import Family
from pqpierce.kkm import KkmOutcome
from pqpierce.render import render_svg

fake = SimpleNamespace(
    family=Family(tuple(sets)), transform=Similarity(mpq(1), mpq(0), mpq(0)),
    kkm=KkmOutcome("Hard", BARYCENTER, None, 0, 1, cfg), classes=[res], scaled_points=res.points,
)
out = Path(__file__).with_name("hard_class.svg")
out.write_text(render_svg(cert=fake))
print("wrote", out)
