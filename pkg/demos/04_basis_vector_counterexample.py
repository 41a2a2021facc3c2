"""
The set of basis vectors
========================

Truncating {e_1, e_2, ...} at length n gives e_1, ..., e_n plus a zero
column, so the truncation matrix is n x (n + 1) and can never have a left
inverse. Interpolation still works for every table that vanishes on the zero
column, and only for those.
"""

from kqsets import example1_matrix, left_inverse, right_inverse, solvability_census

for q in (2, 3, 4):
    for n in (1, 2, 3, 4):
        m = example1_matrix(q, n)
        census = solvability_census(m)
        print(
            f"q={q} n={n}: left inverse {'yes' if left_inverse(m) is not None else 'no'}, "
            f"right inverse {'yes' if right_inverse(m) is not None else 'no'}, "
            f"{census.solvable}/{census.total} tables interpolable, "
            f"f(0)=0 rule {'holds' if census.matches_zero_rule else 'fails'}"
        )
