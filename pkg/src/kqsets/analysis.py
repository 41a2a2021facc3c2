"""Characters, interpolation and per-level verifiers for subsets of D_q.

A subset K of D_q is only ever seen through a finite truncation: a matrix
whose columns are the distinct length-n truncations of its elements.  Left
invertibility of that matrix lets every function on the columns be
interpolated by a character; right invertibility lets integer combinations
of the columns hit every cylinder.  The verifiers here check both the
inverse criteria and their brute-force counterparts at a fixed level.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .kronecker import LevelMatrix
from .modmatrix import (
    DimensionMismatch,
    ModMatrix,
    ModVector,
    basis_vector,
    left_inverse,
    matvec,
    right_inverse,
    solvable_mask,
    solve,
    transpose,
)
from .residue import Residue, check_modulus

DEFAULT_TABLE_BUDGET = 10**5
DEFAULT_CLOSURE_BUDGET = 10**6
TABLE_BUDGET_ENV = "KQSETS_TABLE_BUDGET"
CLOSURE_BUDGET_ENV = "KQSETS_CLOSURE_BUDGET"


class BudgetExceeded(ValueError):
    pass


class NoInverseError(ArithmeticError):
    pass


def resolve_budget(override: int | None, env: str, default: int) -> int:
    """An explicit value wins over the environment, which wins over the default."""
    if override is not None:
        return int(override)
    raw = os.environ.get(env)
    return int(raw) if raw else default


def _as_matrix(m) -> ModMatrix:
    return m.matrix if isinstance(m, LevelMatrix) else m


@dataclass(frozen=True)
class Character:
    """A continuous character of D_q, stored as its coefficient vector.

    ``chi(x) = x[:level] . coeffs``; the level bounds the continuity index.
    """

    coeffs: ModVector

    @property
    def level(self) -> int:
        return len(self.coeffs)

    @property
    def q(self) -> int:
        return self.coeffs.q

    def __call__(self, x: ModVector) -> int:
        return character_eval(self, x).value


def character_eval(chi: Character, x: ModVector) -> Residue:
    """``chi(x)`` from a truncation of ``x`` that is at least ``chi.level`` long."""
    if len(x) < chi.level:
        raise DimensionMismatch(
            f"truncation of length {len(x)} is shorter than the character level {chi.level}"
        )
    return Residue(x[: chi.level].dot(chi.coeffs), chi.q)


def character_vector(chi: Callable[[ModVector], int], level: int, q: int) -> Character:
    """Recover the coefficient vector of a character from its values on e_1..e_level."""
    q = check_modulus(q)
    return Character(ModVector([int(chi(basis_vector(i, level, q))) for i in range(1, level + 1)], q))


@dataclass(frozen=True)
class FunctionTable:
    """A C_q-valued function on a finite set of truncations.

    Keys are column tuples; all keys have the same length, which bounds the
    continuity index of the function.
    """

    q: int
    values: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        q = check_modulus(self.q)
        vals = {tuple(int(x) for x in k): int(v) % q for k, v in self.values.items()}
        lengths = {len(k) for k in vals}
        if len(lengths) > 1:
            raise ValueError("table keys have different lengths")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_columns(cls, columns: Iterable[ModVector], values: Iterable[int]) -> FunctionTable:
        columns = list(columns)
        values = list(values)
        if len(columns) != len(values):
            raise ValueError(f"{len(columns)} columns but {len(values)} values")
        return cls(columns[0].q, {c.to_tuple(): v for c, v in zip(columns, values)})

    @property
    def level(self) -> int:
        return len(next(iter(self.values))) if self.values else 0

    def __call__(self, col: ModVector) -> int:
        return self.values[col.to_tuple()]

    def is_total(self, m) -> bool:
        m = _as_matrix(m)
        return all(c.to_tuple() in self.values for c in m.columns())


def fbar(m, f: FunctionTable) -> ModVector:
    """The values of ``f`` listed in the column order of ``m``."""
    m = _as_matrix(m)
    if f.q != m.q:
        raise ValueError(f"table over Z/{f.q} does not match matrix over Z/{m.q}")
    out = []
    for j, col in enumerate(m.columns(), start=1):
        key = col.to_tuple()
        if key not in f.values:
            raise KeyError(f"table not total: no value for column {j} {key}")
        out.append(f.values[key])
    return ModVector(out, m.q)


def character_from_values(m, f: FunctionTable) -> Character:
    """Interpolate ``f`` by a character using a left inverse ``L`` of ``m``.

    The character is ``x -> (L x)^T fbar``, i.e. coefficients ``L^T fbar``.

    Raises:
        NoInverseError: when ``m`` has no left inverse.
    """
    m = _as_matrix(m)
    vals = fbar(m, f)
    inv = left_inverse(m)
    if inv is None:
        raise NoInverseError(f"{m.rows}x{m.cols} matrix has no left inverse over Z/{m.q}")
    return Character(matvec(transpose(inv), vals))


def interpolation_solvable(m, f: FunctionTable) -> bool:
    """Whether some character agrees with ``f`` on the columns of ``m``."""
    m = _as_matrix(m)
    return solve(transpose(m), fbar(m, f)) is not None


@dataclass(frozen=True)
class DensityWitness:
    """Coefficients ``alpha`` with ``M alpha = [t; 0]``.

    The integer combination of the columns with weights ``alpha`` is a point
    of the generated subgroup lying in the cylinder of ``t``.
    """

    target: ModVector
    level: int
    alpha: ModVector
    combination: ModVector

    def __post_init__(self):
        m = len(self.target)
        if len(self.combination) != self.level or m > self.level:
            raise ValueError("witness lengths are inconsistent")
        if self.combination[:m] != self.target:
            raise ValueError("combination does not start with the target")
        if m < self.level and not self.combination[m:].is_zero():
            raise ValueError("combination is not zero past the target")


def density_witness(m, t: ModVector) -> DensityWitness:
    """Build ``alpha = R [t; 0]`` from a right inverse ``R`` and check ``M alpha``."""
    m = _as_matrix(m)
    if t.q != m.q:
        raise ValueError(f"target over Z/{t.q} does not match matrix over Z/{m.q}")
    if len(t) > m.rows:
        raise DimensionMismatch(f"target of length {len(t)} exceeds {m.rows} rows")
    r = right_inverse(m)
    if r is None:
        raise NoInverseError(f"{m.rows}x{m.cols} matrix has no right inverse over Z/{m.q}")
    padded = t if len(t) == m.rows else t.concat(ModVector(np.zeros(m.rows - len(t)), m.q))
    alpha = matvec(r, padded)
    return DensityWitness(t, m.rows, alpha, matvec(m, alpha))


def example1_matrix(q: int, n: int) -> ModMatrix:
    """Truncations of ``{e_k : k >= 1}`` at length ``n``: e_1..e_n, then the zero column."""
    q = check_modulus(q)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    data = np.zeros((n, n + 1), dtype=np.int64)
    data[:, :n] = np.eye(n, dtype=np.int64)
    return ModMatrix(data, q)


def all_tables(m) -> Iterator[FunctionTable]:
    """Every function from the columns of ``m`` to C_q, in lexicographic value order."""
    m = _as_matrix(m)
    cols = m.columns()
    for vals in itertools.product(range(m.q), repeat=len(cols)):
        yield FunctionTable.from_columns(cols, vals)


def _all_value_vectors(q: int, k: int) -> np.ndarray:
    """All ``q**k`` vectors in C_q^k as the columns of a ``k x q**k`` array."""
    idx = np.arange(q**k, dtype=np.int64)
    return np.stack([(idx // q ** (k - 1 - i)) % q for i in range(k)])


@dataclass
class Report:
    """Outcome of a single verifier run."""

    property: str
    mode: str
    passed: bool
    details: dict = field(default_factory=dict)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = self.details.get("message", "")
        return f"{self.property} [{self.mode}]: {status}" + (f" - {extra}" if extra else "")

    def to_dict(self) -> dict:
        return {"property": self.property, "mode": self.mode, "pass": self.passed, "details": self.details}


def verify_kq_level(m, mode: str = "fast", budget: int | None = None, max_failures: int = 10) -> Report:
    """Check the interpolation (K_q) criterion at one level.

    ``fast`` asks whether ``m`` has a left inverse.  ``exhaustive`` runs
    through every function table on the columns and asks whether
    ``m^T c = fbar`` is solvable for each.
    """
    m = _as_matrix(m)
    if mode == "fast":
        ok = left_inverse(m) is not None
        msg = "left inverse exists" if ok else "no left inverse"
        return Report("kq", mode, ok, {"left_inverse": ok, "message": msg})
    if mode != "exhaustive":
        raise ValueError(f"unknown kq mode {mode!r}")
    limit = resolve_budget(budget, TABLE_BUDGET_ENV, DEFAULT_TABLE_BUDGET)
    total = m.q**m.cols
    if total > limit:
        raise BudgetExceeded(f"{total} function tables exceed the budget of {limit}")
    vals = _all_value_vectors(m.q, m.cols)
    mask = solvable_mask(transpose(m), vals)
    bad = np.flatnonzero(~mask)
    failures = [vals[:, j].tolist() for j in bad[:max_failures]]
    ok = bad.size == 0
    msg = f"{total} functions checked, {total - bad.size} solvable"
    return Report(
        "kq", mode, ok,
        {"checked": total, "solvable": int(total - bad.size), "failures": failures, "message": msg},
    )


def subgroup_closure_size(m, budget: int | None = None) -> int:
    """Order of the additive subgroup of C_q^rows generated by the columns of ``m``.

    Breadth-first saturation: starting from 0, keep adding generators until
    nothing new appears.  Vectors are encoded base ``q``.
    """
    m = _as_matrix(m)
    q, n = m.q, m.rows
    limit = resolve_budget(budget, CLOSURE_BUDGET_ENV, DEFAULT_CLOSURE_BUDGET)
    order = q**n
    if order > limit:
        raise BudgetExceeded(f"group of order {order} exceeds the closure budget of {limit}")
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    seen = np.zeros(order, dtype=bool)
    seen[0] = True
    frontier = np.zeros((1, n), dtype=np.int64)
    gens = m.data.T
    count = 1
    while frontier.size:
        cand = ((frontier[:, None, :] + gens[None, :, :]) % q).reshape(-1, n)
        codes = cand @ weights
        codes, first = np.unique(codes, return_index=True)
        fresh = ~seen[codes]
        seen[codes[fresh]] = True
        frontier = cand[first[fresh]]
        count += int(fresh.sum())
    return count


def verify_generation_level(m, mode: str = "fast", budget: int | None = None) -> Report:
    """Check the generation criterion at one level.

    ``fast`` asks whether ``m`` has a right inverse; ``closure`` computes the
    subgroup generated by the columns and compares its order with ``q**rows``.
    """
    m = _as_matrix(m)
    if mode == "fast":
        ok = right_inverse(m) is not None
        msg = "right inverse exists" if ok else "no right inverse"
        return Report("gen", mode, ok, {"right_inverse": ok, "message": msg})
    if mode != "closure":
        raise ValueError(f"unknown generation mode {mode!r}")
    size = subgroup_closure_size(m, budget)
    order = m.q**m.rows
    return Report(
        "gen", mode, size == order,
        {"subgroup_size": size, "group_order": order, "message": f"subgroup size {size} of {order}"},
    )


@dataclass
class Census:
    total: int
    solvable: int
    #: True when the solvable tables are exactly those vanishing on the zero column.
    matches_zero_rule: bool


def solvability_census(m, budget: int | None = None) -> Census:
    """Count the function tables on the columns of ``m`` that some character interpolates.

    Characters vanish at 0, so a table with ``f(0) != 0`` on a zero column can
    never be interpolated; ``matches_zero_rule`` records whether that is the
    only obstruction.
    """
    m = _as_matrix(m)
    limit = resolve_budget(budget, TABLE_BUDGET_ENV, DEFAULT_TABLE_BUDGET)
    total = m.q**m.cols
    if total > limit:
        raise BudgetExceeded(f"{total} function tables exceed the budget of {limit}")
    vals = _all_value_vectors(m.q, m.cols)
    mask = solvable_mask(transpose(m), vals)
    zero_cols = [j for j in range(m.cols) if not m.data[:, j].any()]
    predicted = ~vals[zero_cols].any(axis=0) if zero_cols else np.ones(total, dtype=bool)
    return Census(total, int(mask.sum()), bool(np.array_equal(mask, predicted)))
