"""Exact linear algebra over Z/qZ and perfect Kronecker-type sets in D_q."""

from .analysis import (
    BudgetExceeded,
    Character,
    DensityWitness,
    FunctionTable,
    NoInverseError,
    Report,
    character_eval,
    character_from_values,
    character_vector,
    density_witness,
    example1_matrix,
    fbar,
    interpolation_solvable,
    solvability_census,
    subgroup_closure_size,
    verify_generation_level,
    verify_kq_level,
)
from .kronecker import (
    LevelMatrix,
    TruncationSet,
    build_level_matrix,
    column_for_path,
    extend_column,
    membership,
    truncation_set,
    verify_tree_branching,
)
from .modmatrix import (
    DimensionMismatch,
    ModMatrix,
    ModVector,
    basis_vector,
    block2x2,
    determinant,
    howell_form,
    identity,
    is_invertible,
    left_inverse,
    matmul,
    right_inverse,
    solve,
    transpose,
    zero,
)
from .residue import (
    MAX_MODULUS,
    ModulusMismatch,
    NotAUnit,
    Residue,
    annihilator,
    extended_gcd,
    unit_inverse,
)

__version__ = "0.1.0"
