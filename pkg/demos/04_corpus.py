"""A small benchmark: certificate sizes against the exact piercing number.

Run:  python demos/04_corpus.py
The same table is available as  pqpierce bench --seeds 1..20 --n 8
"""
import collections
import time

from pqpierce.instance import generate_cluster, generate_random_43
from pqpierce.oracle import min_piercing
from pqpierce.pierce943 import pierce_all

paths = collections.Counter()
worst = 0
t0 = time.perf_counter()
for seed in range(1, 21):
    for fam in (generate_cluster(1 + seed % 3, 8, seed=seed), generate_random_43(8, seed=seed)):
        cert = pierce_all(fam)
        tau = min_piercing(fam).tau
        paths[cert.path] += 1
        worst = max(worst, len(cert.points))
        print(f"{fam.name:<22} {cert.path:<9} {len(cert.points)} points (tau = {tau})")
print(f"paths {dict(paths)}, largest certificate {worst}, {time.perf_counter() - t0:.1f} s total")
