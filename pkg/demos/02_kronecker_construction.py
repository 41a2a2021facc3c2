"""
The unitriangular family and its tree of columns
=================================================

Builds M_1, M_2, M_4, M_8, checks that they are invertible for a composite
modulus, and follows branches of the binary tree formed by their columns.
"""

import itertools

from kqsets import (
    build_level_matrix,
    column_for_path,
    determinant,
    membership,
    verify_tree_branching,
)
from kqsets.modmatrix import ModVector

q = 6
for n in range(4):
    lm = build_level_matrix(q, n)
    print(f"M_{lm.size} over Z/{q}, det = {determinant(lm.matrix).value}")
    print(lm.matrix.to_text())

# Each branch of zeros and ones picks one column per level. Branch (1, 0, 1)
# lands on e1 + e2 + e6, which has finite support; the all-ones branch is
# the truncation of e1 + e2 + e4 + e8 + ..., which does not.
for path in [(1, 0, 1), (1, 1, 1)]:
    idx, col = column_for_path(q, path)
    print(f"branch {path} -> column {idx}: {col.to_tuple()}")

# The zero vector is never a column: every column starts with a 1.
print("zero vector is a column of M_8:", membership(ModVector([0] * 8, q)))

# Every column has exactly two children at the next level, all distinct.
for n in range(6):
    print(verify_tree_branching(q, n).summary())

# All 2^n branches of length n give distinct columns.
cols = {column_for_path(q, p)[0] for p in itertools.product((0, 1), repeat=5)}
print("distinct columns reached at level 5:", len(cols))
