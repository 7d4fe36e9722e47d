"""Reversing the cat map, first as a matrix and then as an affine map.

Run: python demos/cat_map_reversibility.py
"""

from fractions import Fraction

from toralrev import affine, dynamics, gl2z
from toralrev.affine import AffineElement
from toralrev.exactmath import TorusPoint, UniMat

cat = UniMat(2, 1, 1, 1)
print("A =", cat, "|", gl2z.classify(cat).kind.value)

# A reverser conjugates A to its inverse. The closed-form path finds one
# through the cycle of the form c x^2 + (d - a) x y - b y^2.
rep = gl2z.reversibility(cat)
print("reverser R0       :", rep.reverser)
print("involutive reverser:", rep.involutive_reverser)
tau = rep.involutive_reverser
print("  tau^2 = I        :", (tau @ tau).is_identity())
print("  tau A tau = A^-1 :", tau @ cat @ tau == cat.inverse())

# Its neighbour [[1,1],[1,0]] squares to the cat map but has det -1 and is
# not an involution, so nothing reverses it.
root = UniMat(1, 1, 1, 0)
print("\n[[1,1],[1,0]]^2 == A:", root @ root == cat, "| reversible:", gl2z.reversibility(root).reversible)

# Adding a translation changes nothing here because A - I is invertible:
# the translation part of the certificate is forced.
f = AffineElement(cat, TorusPoint(Fraction(1, 2), Fraction(1, 3)))
ar = affine.affine_strong_reversibility(f)
print("\nf =", f)
print("certificate (R, r):", ar.certificate)
print("  conjugates f to f^-1:", affine.conjugate_in_G(f, ar.certificate) == affine.invert(f))
print("  is an involution    :", (ar.certificate @ ar.certificate).is_identity())

# Conjugating by the translation to the unique fixed point removes the translation.
v = dynamics.linearizing_translation(cat, f.translation)
print("\nfixed point v:", v, "->", affine.conjugate_in_G(f, AffineElement(UniMat(1, 0, 0, 1), -v)))

# Entropy is exact data plus a decimal, and periodic points grow at the same rate.
e = dynamics.entropy(cat, 40)
print("\nentropy:", e)
for n in (1, 2, 3, 10, 30):
    print(f"  n={n:2d}  #Fix(A^n) = {dynamics.periodic_point_count(cat, n)}")
print("  (1/30) log #Fix(A^30) =", dynamics.growth_rate(cat, 30))
