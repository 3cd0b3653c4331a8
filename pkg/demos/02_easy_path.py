"""The common case: a simplex point in none of the sets A_i.

A generated (4,3)-family is scaled into the disk and the simplex is searched.
At an easy point no region holds a witness triple, and the certificate is
assembled from at most two region points plus a piercing of 2-intervals cut
out by the two chords.

Run:  python demos/02_easy_path.py
"""
from pqpierce.instance import generate_cluster
from pqpierce.oracle import min_piercing
from pqpierce.pierce943 import pierce_all

fam = generate_cluster(3, 12, seed=7)
cert = pierce_all(fam)

k = cert.kkm
print(f"family {fam.name}: {len(fam)} sets")
print(f"search: {k.kind} at x = {k.point} after {k.evaluations} evaluation(s)")

easy = cert.easy
print("regions that hold a whole set:", easy.occupied or "none")
print("sets left for the chords:", len(easy.remaining))
if easy.two_intervals is not None:
    def show(part):
        return "-" if part is None else f"[{part[0]}, {part[1]}]"

    for it in easy.two_intervals.items:
        print(f"  set {it.owner}: chord f0f2 {show(it.part1)}, chord f1f3 {show(it.part2)}")
print("chord points (axis, parameter):", [(a, str(u)) for a, u in easy.interval_points])

print(f"certificate: {len(cert.points)} points, verified = {cert.verified}")
print(f"exact piercing number for comparison: {min_piercing(fam).tau}")
