"""
Interpolating functions by characters, and hitting cylinders
=============================================================

A left inverse of M_n turns any table of values on its columns into a
character. A right inverse gives integer combinations of columns that land
in any prescribed cylinder set.
"""

import numpy as np

from kqsets import (
    FunctionTable,
    ModVector,
    build_level_matrix,
    character_from_values,
    density_witness,
    verify_generation_level,
    verify_kq_level,
)

q = 6
lm = build_level_matrix(q, 2)

# A random table of values on the four columns of M_4.
rng = np.random.default_rng(0)
values = rng.integers(0, q, size=lm.size).tolist()
f = FunctionTable.from_columns(lm.columns(), values)
chi = character_from_values(lm, f)
print("character coefficients:", chi.coeffs.to_tuple())
for col in lm.columns():
    print(f"  {col.to_tuple()}  f = {f(col)}  chi = {chi(col)}")

# The same fact by brute force: all 6^4 tables can be interpolated.
print(verify_kq_level(lm, "exhaustive").summary())

# Density: combine columns of M_8 so the result starts with (5, 4, 3) and is
# zero afterwards.
w = density_witness(build_level_matrix(q, 3), ModVector([5, 4, 3], q))
print("alpha =", w.alpha.to_tuple())
print("combination =", w.combination.to_tuple())

# The subgroup generated by the columns of M_4 is all of C_6^4.
print(verify_generation_level(lm, "closure").summary())
