"""
Solving linear systems over Z/qZ
================================

Over a composite modulus, ordinary Gaussian elimination breaks down because
some nonzero residues have no inverse. This script walks through the
Howell-form solver on a few small systems mod 4 and mod 6.
"""

from kqsets import ModMatrix, ModVector, howell_form, left_inverse, right_inverse, solve

# 2x = 1 has no solution mod 4, while 2x = 2 has two (x = 1 and x = 3).
a = ModMatrix([[2]], 4)
print("2x = 1 mod 4 ->", solve(a, ModVector([1], 4)))
print("2x = 2 mod 4 ->", solve(a, ModVector([2], 4)))

# The Howell form is the canonical echelon form for row modules over Z/qZ.
# The row span of [2 1] mod 4 also contains 2*(2, 1) = (0, 2), and the Howell
# form lists it explicitly.
h, u = howell_form(ModMatrix([[2, 1]], 4))
print("Howell form of [2 1] mod 4:")
print(h.to_text())

# One-sided inverses. A tall matrix can have a left inverse without being
# square, and [[2], [1]] has one mod 4 because the second entry is a unit.
tall = ModMatrix([[2], [1]], 4)
print("left inverse of [[2],[1]] mod 4:", left_inverse(tall))

# [[2, 0], [0, 1]] mod 4 is not onto: the first coordinate of its image is
# always even, so there is no right inverse.
print("right inverse of diag(2, 1) mod 4:", right_inverse(ModMatrix([[2, 0], [0, 1]], 4)))
