"""Lattice points in the parallelogram of A - I and the fixed points they count.

Run: python demos/pick_and_fixed_points.py [output-dir]
Writes one SVG per matrix of the family A_n = [[-n, 1], [1, 0]].
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

from toralrev import dynamics, lattice
from toralrev.exactmath import TorusPoint, UniMat
from toralrev.oracle import brute_lattice_points

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)
rng = random.Random(0)

print(" n  area  g1 g2   B   N  criterion  #fixed points")
for n in (1, 2, 3, 5, 8):
    a = UniMat(-n, 1, 1, 0)
    r = lattice.lattice_report(a)
    assert brute_lattice_points(a) == (r.interior_count, r.boundary_count)
    b = TorusPoint(Fraction(rng.randrange(7), 7), Fraction(rng.randrange(5), 5))
    fp = lattice.fixed_points(a, b)
    print(f"{n:2d}  {r.area:4d}  {r.g1:2d} {r.g2:2d} {r.boundary_count:3d} {r.interior_count:3d}  {str(r.criterion_holds):9s}  {fp.count}")
    (out / f"parallelogram_n{n}.svg").write_text(dynamics.render_parallelogram(a))

# The criterion is sufficient only: the cat map fails it, yet every
# translation still has exactly |det(A - I)| = 1 fixed point.
cat = UniMat(2, 1, 1, 1)
print("\ncat map criterion:", lattice.pick_fixed_point_criterion(cat))
print("fixed point of x -> A x + (1/3, 1/4):", lattice.fixed_points(cat, TorusPoint(Fraction(1, 3), Fraction(1, 4))).points)
print(f"SVG files written to {out}/")
