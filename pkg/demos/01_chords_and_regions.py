"""A point of the 3-simplex, read as four arcs of the unit circle.

Run:  python demos/01_chords_and_regions.py  (writes chords.svg next to it)
"""
from pathlib import Path

from gmpy2 import mpq

from pqpierce.geom import pt
from pqpierce.kkm import BARYCENTER, chord_config, simplex_point
from pqpierce.render import render_svg

# The barycenter cuts the circle into four equal arcs.  The two chords are
# the coordinate axes, they cross at the origin, and the four regions are
# the open quadrants, numbered clockwise from the lower right.
cfg = chord_config(BARYCENTER)
print("f0..f3:", [f"({p.x}, {p.y})" for p in cfg.f])
print("c:", cfg.c)

# Points are classified exactly: each region is two open halfplanes.
for probe in (pt(mpq(1, 2), mpq(-1, 3)), pt(mpq(-1, 5), mpq(2, 5)), pt(0, mpq(1, 2))):
    hits = [i + 1 for i, R in enumerate(cfg.regions) if all(H.value(probe) > 0 for H in R)]
    print(f"point ({probe.x}, {probe.y}) lies in region(s) {hits or 'none: it is on a chord'}")

# Uneven weights move the circle points.  Every coordinate stays rational
# because the circle is parametrised by the tangent half-angle formula.
skew = chord_config(simplex_point(mpq(1, 8), mpq(1, 2), mpq(1, 4), mpq(1, 8)))
print("skewed f:", [f"({p.x}, {p.y})" for p in skew.f])
print("skewed c:", skew.c)

# A zero weight makes its region vanish.
face = chord_config(simplex_point(0, mpq(1, 3), mpq(1, 3), mpq(1, 3)))
print("regions present with x1 = 0:", [i + 1 for i, R in enumerate(face.regions) if R is not None])

out = Path(__file__).with_name("chords.svg")
out.write_text(render_svg(config=skew))
print("wrote", out)
