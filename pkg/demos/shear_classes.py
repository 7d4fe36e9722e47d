"""Eigenvalue 1: the shear [[1,1],[0,1]] and the maps it carries.

Run: python demos/shear_classes.py
"""

from fractions import Fraction

from toralrev import affine, lattice
from toralrev.affine import AffineElement
from toralrev.exactmath import TorusPoint, UniMat

shear = UniMat(1, 1, 0, 1)
print("dichotomy:", affine.similarity_dichotomy(shear).kind.value)

# A - I has rank one, so a translation either misses its image or lands on
# a family of whole circles of fixed points.
for b in [TorusPoint(0, Fraction(1, 3)), TorusPoint(Fraction(1, 2), 0)]:
    fp = lattice.fixed_points(shear, b)
    print(f"fixed points of x -> A x + {b}:", fp.kind.value, fp.points, fp.kernel_direction or "")

# The second translation coordinate survives every conjugation up to sign,
# so (A, (0, s)) for distinct s in [0, 1/2] lie in distinct classes.
vals = [Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(1, 2)]
print("\nclass table for (A, (0, s)):")
print("      " + "  ".join(f"{str(t):>4s}" for t in vals))
for s in vals:
    row = []
    for t in vals:
        w = affine.g_conjugacy_test(AffineElement(shear, TorusPoint(0, s)), AffineElement(shear, TorusPoint(0, t)))
        row.append("  yes" if w else "   no")
    print(f"{str(s):>4s}  " + " ".join(row))

# Despite all that, every one of these maps is strongly reversible.
f = AffineElement(shear, TorusPoint(Fraction(2, 7), Fraction(1, 3)))
rep = affine.affine_strong_reversibility(f)
print("\n", f, "strongly reversible via", rep.certificate)
