"""The recursive unitriangular family M_{2^n} and its tree of column truncations.

``M_1 = [1]`` and ``M_{2N} = [[M_N, M_N], [O, I]]``.  Column ``i`` of
``M_{2N}`` is column ``i`` of ``M_N`` padded with zeros (``i <= N``) or
column ``i - N`` of ``M_N`` stacked on ``e_{i-N}`` (``i > N``).  Reading the
columns of every level as cylinder sets gives a complete binary tree whose
branches are the points of the perfect set K.

Column indices in this module are 1-based, matching the usual matrix
notation; a branch ``(b_1, ..., b_n)`` lands on column
``1 + sum(b_k * 2**(k-1))`` of ``M_{2^n}``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .modmatrix import ModMatrix, ModVector, block2x2, identity, zero
from .residue import check_modulus

#: Default cap on the side length 2**n of a level matrix.
DEFAULT_MAX_SIZE = 4096
MAX_SIZE_ENV = "KQSETS_MAX_SIZE"


def max_size(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(MAX_SIZE_ENV)
    return int(env) if env else DEFAULT_MAX_SIZE


class SizeLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class LevelMatrix:
    """``M_{2^level}`` over Z/qZ."""

    level: int
    matrix: ModMatrix

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def size(self) -> int:
        return self.matrix.rows

    def column(self, index: int) -> ModVector:
        """Column ``index`` (1-based)."""
        return self.matrix.column(index - 1)

    def columns(self) -> list[ModVector]:
        return self.matrix.columns()


@dataclass(frozen=True)
class TruncationSet:
    """The level-n truncations of K: the columns of ``M_{2^n}``, in column order."""

    level: int
    columns: tuple[ModVector, ...]
    q: int = field(repr=False, default=0)

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("truncation set has repeated columns")
        if self.columns and not self.q:
            object.__setattr__(self, "q", self.columns[0].q)

    def __len__(self):
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __contains__(self, t):
        return t in set(self.columns)


def _unitriangular(n: int) -> np.ndarray:
    m = np.ones((1, 1), dtype=np.int64)
    for _ in range(n):
        k = m.shape[0]
        m = np.block([[m, m], [np.zeros((k, k), dtype=np.int64), np.eye(k, dtype=np.int64)]])
    return m


def build_level_matrix(q: int, n: int, cap: int | None = None) -> LevelMatrix:
    """Build ``M_{2^n}`` over Z/qZ.

    Raises:
        SizeLimitExceeded: if ``2**n`` exceeds the size cap (default 4096,
            overridable by argument or the ``KQSETS_MAX_SIZE`` variable).
    """
    q = check_modulus(q)
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    limit = max_size(cap)
    if 2**n > limit:
        raise SizeLimitExceeded(f"level {n} gives size {2**n} > cap {limit}")
    return LevelMatrix(n, ModMatrix(_unitriangular(n), q))


def build_level_matrix_recursive(q: int, n: int) -> LevelMatrix:
    """Same matrix via :func:`block2x2` at every step; slower, used as a cross-check."""
    m = identity(1, q)
    for _ in range(n):
        k = m.rows
        m = block2x2(m, m, zero(k, k, q), identity(k, q))
    return LevelMatrix(n, m)


def truncation_set(q: int, n: int, cap: int | None = None) -> TruncationSet:
    lm = build_level_matrix(q, n, cap)
    return TruncationSet(n, tuple(lm.columns()), lm.q)


def _level_of_length(length: int) -> int:
    if length < 1 or length & (length - 1):
        raise ValueError(f"length {length} is not a power of two")
    return length.bit_length() - 1


def extend_column(col: ModVector, bit: int, index: int) -> ModVector:
    """Child of column ``index`` of ``M_{2^n}`` in ``M_{2^(n+1)}``.

    ``bit == 0`` appends ``2**n`` zeros (column ``index`` of the next level);
    ``bit == 1`` appends ``e_index`` (column ``index + 2**n``).
    """
    size = len(col)
    level = _level_of_length(size)
    if not 1 <= index <= size:
        raise IndexError(f"column index {index} out of range 1..{size}")
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    expected = column_for_index(col.q, level, index)
    if col != expected:
        raise ValueError(f"{col!r} is not column {index} of M_{size}")
    tail = np.zeros(size, dtype=np.int64)
    if bit:
        tail[index - 1] = 1
    return col.concat(ModVector(tail, col.q))


def path_index(path: Sequence[int]) -> int:
    """1-based column index of a branch: ``1 + sum(b_k * 2**(k-1))``."""
    idx = 1
    for k, b in enumerate(path):
        if b not in (0, 1):
            raise ValueError(f"path entries must be 0 or 1, got {b}")
        idx += b << k
    return idx


def index_path(index: int, level: int) -> tuple[int, ...]:
    if not 1 <= index <= 2**level:
        raise IndexError(f"column index {index} out of range 1..{2**level}")
    return tuple(((index - 1) >> k) & 1 for k in range(level))


def column_for_path(q: int, path: Sequence[int]) -> tuple[int, ModVector]:
    """Column index and truncation of the branch ``path`` of the tree.

    The empty path is the root: index 1 and the single column ``(1)`` of M_1.
    """
    q = check_modulus(q)
    path = tuple(path)
    idx = path_index(path)
    data = np.ones(1, dtype=np.int64)
    cur = 1
    for b in path:
        size = data.size
        tail = np.zeros(size, dtype=np.int64)
        if b:
            tail[cur - 1] = 1
        data = np.concatenate([data, tail])
        cur += b * size
    return idx, ModVector(data, q)


def column_for_index(q: int, level: int, index: int) -> ModVector:
    return column_for_path(q, index_path(index, level))[1]


def membership(t: ModVector) -> int | None:
    """1-based index of ``t`` among the columns of ``M_{len(t)}``, or ``None``.

    Walks the recursion top-down: the lower half of a column is either zero
    or ``e_i`` where ``i`` is the index of the upper half.
    """
    _level_of_length(len(t))
    data = t.data

    def find(lo: int, size: int) -> int | None:
        if size == 1:
            return 1 if data[lo] == 1 else None
        half = size // 2
        top = find(lo, half)
        if top is None:
            return None
        bottom = data[lo + half: lo + size]
        nz = np.flatnonzero(bottom)
        if nz.size == 0:
            return top
        if nz.size == 1 and nz[0] == top - 1 and bottom[nz[0]] == 1:
            return top + half
        return None

    return find(0, len(data))


@dataclass
class BranchingReport:
    q: int
    level: int
    parents: int = 0
    children: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"tree branching q={self.q} level {self.level}->{self.level + 1}: {status} "
            f"({self.parents} parents, {self.children} children)"
        )


def verify_tree_branching(q: int, n: int, cap: int | None = None) -> BranchingReport:
    """Check that level ``n`` of the column tree splits cleanly into level ``n + 1``.

    Every column of ``M_{2^n}`` must have exactly two distinct extensions
    among the columns of ``M_{2^(n+1)}``, those must be the zero- and
    identity-extensions, children of different parents must not overlap, and
    all columns of the next level must be distinct.
    """
    parents = build_level_matrix(q, n, cap)
    kids = build_level_matrix(q, n + 1, cap)
    report = BranchingReport(q=parents.q, level=n)
    size = parents.size
    pcols = [c.to_tuple() for c in parents.columns()]
    ccols = [c.to_tuple() for c in kids.columns()]
    report.parents = len(pcols)
    report.children = len(ccols)
    if len(set(pcols)) != len(pcols):
        report.violations.append(f"level {n} has repeated columns")
    if len(set(ccols)) != len(ccols):
        report.violations.append(f"level {n + 1} has repeated columns")
    by_parent: dict[tuple, list[int]] = {p: [] for p in pcols}
    for j, c in enumerate(ccols, start=1):
        head = c[:size]
        if head not in by_parent:
            report.violations.append(f"child column {j} truncates to a non-column")
            continue
        by_parent[head].append(j)
    claimed: set[int] = set()
    for i, p in enumerate(pcols, start=1):
        js = by_parent[p]
        if len(js) != 2:
            report.violations.append(f"parent column {i} has {len(js)} children")
        if len({ccols[j - 1] for j in js}) != len(js):
            report.violations.append(f"parent column {i} has coinciding children")
        if claimed.intersection(js):
            report.violations.append(f"parent column {i} shares children with another parent")
        claimed.update(js)
        pv = parents.column(i)
        expected = {extend_column(pv, 0, i).to_tuple(), extend_column(pv, 1, i).to_tuple()}
        if expected != {ccols[j - 1] for j in js}:
            report.violations.append(f"parent column {i} children differ from its extensions")
    return report
