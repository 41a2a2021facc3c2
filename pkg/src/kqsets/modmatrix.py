"""Dense matrices and vectors over Z/qZ.

Entries live in read-only ``int64`` numpy arrays holding canonical residues.
Linear systems are solved through the Howell normal form, which stays correct
when ``q`` is composite (field elimination does not: ``2x = 2 (mod 4)`` has
two solutions and ``2x = 1 (mod 4)`` has none).

Unsolvable systems and missing inverses are reported by returning ``None``.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .residue import (
    ModulusMismatch,
    Residue,
    check_modulus,
    extended_gcd,
    inverse_mod,
    unit_normalizer,
)

_INT64_MAX = np.iinfo(np.int64).max


class DimensionMismatch(ValueError):
    """Raised for non-conformable operands."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _mulmod(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Exact ``a @ b mod q`` without int64 overflow."""
    inner = a.shape[-1]
    chunk = max(1, _INT64_MAX // max(1, (q - 1) ** 2) - 1)
    if inner <= chunk:
        return (a @ b) % q
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, inner, chunk):
        stop = start + chunk
        out = (out + (a[:, start:stop] @ b[start:stop, :]) % q) % q
    return out


class ModVector:
    """A column vector over Z/qZ."""

    __slots__ = ("_data", "_q")

    def __init__(self, entries, q: int):
        q = check_modulus(q)
        data = np.array(entries, dtype=object if _has_big(entries) else np.int64)
        data = np.asarray(data % q, dtype=np.int64).reshape(-1)
        if data.size == 0:
            raise ValueError("empty vectors are not supported")
        self._data = _frozen(data)
        self._q = q

    @property
    def q(self) -> int:
        return self._q

    @property
    def data(self) -> np.ndarray:
        return self._data

    def __len__(self):
        return self._data.size

    def __iter__(self):
        return (int(v) for v in self._data)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ModVector(self._data[i], self._q)
        return int(self._data[i])

    def residue(self, i: int) -> Residue:
        return Residue(int(self._data[i]), self._q)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self._data)

    def __eq__(self, other):
        if not isinstance(other, ModVector):
            return NotImplemented
        return self._q == other._q and np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash((self._q, self.to_tuple()))

    def __repr__(self):
        return f"ModVector({list(self.to_tuple())}, q={self._q})"

    def _check(self, other: ModVector):
        if other._q != self._q:
            raise ModulusMismatch(f"moduli differ: {self._q} vs {other._q}")
        if len(other) != len(self):
            raise DimensionMismatch(f"lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: ModVector) -> ModVector:
        if not isinstance(other, ModVector):
            return NotImplemented
        self._check(other)
        return ModVector(self._data + other._data, self._q)

    def __sub__(self, other: ModVector) -> ModVector:
        if not isinstance(other, ModVector):
            return NotImplemented
        self._check(other)
        return ModVector(self._data - other._data, self._q)

    def __neg__(self):
        return ModVector(-self._data, self._q)

    def scale(self, c: int) -> ModVector:
        return ModVector((int(c) % self._q) * self._data, self._q)

    def dot(self, other: ModVector) -> int:
        self._check(other)
        return int(_mulmod(self._data[None, :], other._data[:, None], self._q)[0, 0])

    def concat(self, other: ModVector) -> ModVector:
        if other._q != self._q:
            raise ModulusMismatch(f"moduli differ: {self._q} vs {other._q}")
        return ModVector(np.concatenate([self._data, other._data]), self._q)

    def is_zero(self) -> bool:
        return not self._data.any()

    def as_column(self) -> ModMatrix:
        return ModMatrix(self._data[:, None], self._q)


def _has_big(entries) -> bool:
    # Python ints beyond int64 must be reduced before conversion.
    try:
        arr = np.asarray(entries)
    except OverflowError:
        return True
    return arr.dtype == object


class ModMatrix:
    """A dense ``rows x cols`` matrix over Z/qZ; immutable."""

    __slots__ = ("_data", "_q")

    def __init__(self, entries, q: int):
        q = check_modulus(q)
        if isinstance(entries, ModMatrix):
            entries = entries._data
        data = np.array(entries, dtype=object if _has_big(entries) else np.int64)
        data = np.asarray(data % q, dtype=np.int64)
        if data.ndim != 2:
            raise ValueError(f"matrix entries must be two-dimensional, got shape {data.shape}")
        if data.shape[0] == 0 or data.shape[1] == 0:
            raise ValueError("empty matrices are not supported")
        self._data = _frozen(data)
        self._q = q

    @classmethod
    def _wrap(cls, data: np.ndarray, q: int) -> ModMatrix:
        # Trusted fast path: data already canonical int64.
        obj = cls.__new__(cls)
        obj._data = _frozen(np.ascontiguousarray(data, dtype=np.int64))
        obj._q = q
        return obj

    @classmethod
    def from_columns(cls, columns: Sequence[ModVector]) -> ModMatrix:
        if not columns:
            raise ValueError("empty matrices are not supported")
        q = columns[0].q
        for c in columns:
            if c.q != q:
                raise ModulusMismatch("columns over different moduli")
        return cls(np.stack([c.data for c in columns], axis=1), q)

    @property
    def q(self) -> int:
        return self._q

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def T(self) -> ModMatrix:
        return transpose(self)

    def __getitem__(self, idx):
        return int(self._data[idx])

    def row(self, i: int) -> ModVector:
        return ModVector(self._data[i], self._q)

    def column(self, j: int) -> ModVector:
        return ModVector(self._data[:, j], self._q)

    def columns(self) -> list[ModVector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return self._data.tolist()

    def __eq__(self, other):
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self._q == other._q and np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash((self._q, self.shape, self._data.tobytes()))

    def __repr__(self):
        return f"ModMatrix({self.tolist()}, q={self._q})"

    def __matmul__(self, other):
        if isinstance(other, ModMatrix):
            return matmul(self, other)
        if isinstance(other, ModVector):
            return matvec(self, other)
        return NotImplemented

    def to_text(self) -> str:
        return to_text(self)


# -- constructors ----------------------------------------------------------

def identity(n: int, q: int) -> ModMatrix:
    return ModMatrix._wrap(np.eye(n, dtype=np.int64), check_modulus(q))


def zero(n: int, m: int, q: int) -> ModMatrix:
    if n < 1 or m < 1:
        raise ValueError("empty matrices are not supported")
    return ModMatrix._wrap(np.zeros((n, m), dtype=np.int64), check_modulus(q))


def basis_vector(i: int, n: int, q: int) -> ModVector:
    """The standard basis vector e_i of length ``n`` (``i`` is 1-based)."""
    if not 1 <= i <= n:
        raise IndexError(f"basis index {i} out of range 1..{n}")
    v = np.zeros(n, dtype=np.int64)
    v[i - 1] = 1
    return ModVector(v, q)


def transpose(a: ModMatrix) -> ModMatrix:
    return ModMatrix._wrap(a.data.T, a.q)


def _same_modulus(*items) -> int:
    q = items[0].q
    for it in items[1:]:
        if it.q != q:
            raise ModulusMismatch(f"moduli differ: {q} vs {it.q}")
    return q


def block2x2(a: ModMatrix, b: ModMatrix, c: ModMatrix, d: ModMatrix) -> ModMatrix:
    """Lay out ``[[a, b], [c, d]]``."""
    q = _same_modulus(a, b, c, d)
    if a.rows != b.rows or c.rows != d.rows or a.cols != c.cols or b.cols != d.cols:
        raise DimensionMismatch(
            f"blocks not conformable: {a.shape} {b.shape} / {c.shape} {d.shape}"
        )
    return ModMatrix._wrap(np.block([[a.data, b.data], [c.data, d.data]]), q)


# -- arithmetic --------------------------------------------------------------

def matmul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    q = _same_modulus(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return ModMatrix._wrap(_mulmod(a.data, b.data, q), q)


def matvec(a: ModMatrix, x: ModVector) -> ModVector:
    q = _same_modulus(a, x)
    if a.cols != len(x):
        raise DimensionMismatch(f"cannot multiply {a.shape} by vector of length {len(x)}")
    return ModVector(_mulmod(a.data, x.data[:, None], q)[:, 0], q)


# -- Howell form ---------------------------------------------------------------

def _combine(rows: np.ndarray, i: int, k: int, s: int, t: int, u: int, v: int, q: int):
    """Replace rows i, k by ``s*r_i + t*r_k`` and ``u*r_i + v*r_k``."""
    ri, rk = rows[i].copy(), rows[k]
    rows[i] = (s * ri + t * rk) % q
    rows[k] = (u * ri + v * rk) % q


def _grow(t: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = u.shape[0]
    t = np.vstack([t, np.zeros((1, t.shape[1]), dtype=np.int64)])
    u2 = np.zeros((n + 1, n + 1), dtype=np.int64)
    u2[:n, :n] = u
    u2[n, n] = 1
    return t, u2


def _howell(a: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray, list[tuple[int, int]]]:
    """Howell transform of ``a`` by unimodular row operations.

    Returns ``(h, u, pivots)`` where ``u @ pad(a) == h (mod q)``, ``pad(a)``
    is ``a`` with zero rows appended to match ``h``, and ``pivots`` lists
    ``(row, col)`` of each pivot.  Pivot entries divide ``q``, entries above
    a pivot are reduced below it, and after each pivot the annihilator
    multiple of the pivot row is fed back into the rows below.
    """
    h = np.array(a, dtype=np.int64) % q
    u = np.eye(h.shape[0], dtype=np.int64)
    pivots: list[tuple[int, int]] = []
    r = 0
    for j in range(h.shape[1]):
        if r >= h.shape[0]:
            break
        below = r + np.flatnonzero(h[r:, j])
        if below.size == 0:
            continue
        units = [i for i in below if gcd(int(h[i, j]), q) == 1]
        if units:
            i = units[0]
            if i != r:
                h[[r, i]] = h[[i, r]]
                u[[r, i]] = u[[i, r]]
            inv = inverse_mod(int(h[r, j]), q)
            h[r] = (inv * h[r]) % q
            u[r] = (inv * u[r]) % q
            rest = r + 1 + np.flatnonzero(h[r + 1:, j])
            if rest.size:
                f = h[rest, j][:, None]
                h[rest] = (h[rest] - (f * h[r]) % q) % q
                u[rest] = (u[rest] - (f * u[r]) % q) % q
        else:
            for i in below:
                if i == r:
                    continue
                x, y = int(h[r, j]), int(h[i, j])
                if y == 0:
                    continue
                g, s, t = extended_gcd(x, y)
                cu, cv = (-(y // g)) % q, (x // g) % q
                s, t = s % q, t % q
                _combine(h, r, i, s, t, cu, cv, q)
                _combine(u, r, i, s, t, cu, cv, q)
            nrm = unit_normalizer(int(h[r, j]), q)
            if nrm != 1:
                h[r] = (nrm * h[r]) % q
                u[r] = (nrm * u[r]) % q
        p = int(h[r, j])
        if r:
            k = h[:r, j] // p
            if k.any():
                h[:r] = (h[:r] - (k[:, None] * h[r]) % q) % q
                u[:r] = (u[:r] - (k[:, None] * u[r]) % q) % q
        ann = q // p
        if ann != q:
            extra = (ann * h[r]) % q
            if extra.any():
                free = [i for i in range(r + 1, h.shape[0]) if not h[i].any()]
                if free:
                    z = free[0]
                else:
                    h, u = _grow(h, u)
                    z = h.shape[0] - 1
                h[z] = extra
                u[z] = (u[z] + ann * u[r]) % q
        pivots.append((r, j))
        r += 1
    return h, u, pivots


def howell_form(a: ModMatrix) -> tuple[ModMatrix, ModMatrix]:
    """Howell normal form ``H`` of ``a`` with a unimodular transform ``U``.

    ``H`` may need more rows than ``a`` (over Z/4, the row span of
    ``[[2, 1]]`` also contains ``(0, 2)``).  In that case ``a`` is treated as
    padded with zero rows, so ``U @ pad(a) == H`` with ``U`` square and
    invertible; when no padding is needed this is just ``U @ a == H``.
    """
    h, u, _ = _howell(a.data, a.q)
    return ModMatrix._wrap(h, a.q), ModMatrix._wrap(u, a.q)


def is_howell_form(h: ModMatrix) -> bool:
    """Check the echelon, pivot and reduction conditions of a Howell form.

    The spanning (Howell) property is not checked here; see the tests for a
    brute-force check of that.
    """
    q = h.q
    last = -1
    seen_zero = False
    for i in range(h.rows):
        nz = np.flatnonzero(h.data[i])
        if nz.size == 0:
            seen_zero = True
            continue
        if seen_zero:
            return False
        j = int(nz[0])
        if j <= last:
            return False
        p = int(h.data[i, j])
        if q % p != 0:
            return False
        if np.any(h.data[:i, j] >= p):
            return False
        last = j
    return True


def _solve_columns(a: np.ndarray, b: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``a @ x == b[:, k]`` for every column k at once.

    Returns ``(x, ok)``; columns of ``x`` where ``ok`` is False are garbage.
    The system ``a x = b`` is read as ``x^T a^T = b^T``: ``b^T`` is reduced
    against the Howell form of ``a^T`` pivot by pivot.
    """
    n = a.shape[1]
    h, u, pivots = _howell(a.T, q)
    resid = np.array(b.T, dtype=np.int64) % q
    y = np.zeros((resid.shape[0], h.shape[0]), dtype=np.int64)
    for i, j in pivots:
        p = int(h[i, j])
        c = resid[:, j] // p
        if c.any():
            resid = (resid - (c[:, None] * h[i]) % q) % q
            y[:, i] = c
    ok = ~resid.any(axis=1)
    x = _mulmod(y, u[:, :n], q).T
    return x, ok


def solve(a: ModMatrix, b: ModVector) -> ModVector | None:
    """A solution of ``a @ x == b``, or ``None`` if there is none over Z/qZ."""
    q = _same_modulus(a, b)
    if a.rows != len(b):
        raise DimensionMismatch(f"system {a.shape} with right-hand side of length {len(b)}")
    x, ok = _solve_columns(a.data, b.data[:, None], q)
    if not ok[0]:
        return None
    return ModVector(x[:, 0], q)


def solvable_mask(a: ModMatrix, b: np.ndarray) -> np.ndarray:
    """Boolean mask over the columns of ``b`` telling which ``a x = b_k`` are solvable."""
    b = np.asarray(b, dtype=np.int64)
    if b.ndim != 2 or b.shape[0] != a.rows:
        raise DimensionMismatch(f"right-hand sides of shape {b.shape} for system {a.shape}")
    return _solve_columns(a.data, b % a.q, a.q)[1]


def right_inverse(a: ModMatrix) -> ModMatrix | None:
    """``R`` with ``a @ R == I``, solved column by column against e_1..e_rows."""
    x, ok = _solve_columns(a.data, np.eye(a.rows, dtype=np.int64), a.q)
    if not ok.all():
        return None
    return ModMatrix._wrap(x, a.q)


def left_inverse(a: ModMatrix) -> ModMatrix | None:
    """``L`` with ``L @ a == I``; the transpose of a right inverse of ``a.T``."""
    r = right_inverse(transpose(a))
    return None if r is None else transpose(r)


# -- determinant -------------------------------------------------------------

def determinant(a: ModMatrix) -> Residue:
    """Determinant mod q by triangularization with determinant-one row operations.

    Each elimination step is either a row swap (sign flip) or a 2x2 integer
    transform ``[[s, t], [-b/g, a/g]]`` of determinant exactly 1, so the
    product of the final diagonal equals the determinant up to sign, with no
    division by zero divisors.
    """
    if a.rows != a.cols:
        raise DimensionMismatch(f"determinant of non-square {a.shape} matrix")
    q = a.q
    t = a.data.copy()
    n = a.rows
    sign = 1
    for j in range(n):
        below = j + np.flatnonzero(t[j:, j])
        if below.size == 0:
            return Residue(0, q)
        units = [i for i in below if gcd(int(t[i, j]), q) == 1]
        if units:
            i = units[0]
            if i != j:
                t[[j, i]] = t[[i, j]]
                sign = -sign
            inv = inverse_mod(int(t[j, j]), q)
            rest = j + 1 + np.flatnonzero(t[j + 1:, j])
            if rest.size:
                f = (t[rest, j] * inv % q)[:, None]
                t[rest] = (t[rest] - (f * t[j]) % q) % q
        else:
            for i in below:
                if i == j:
                    continue
                x, y = int(t[j, j]), int(t[i, j])
                if y == 0:
                    continue
                g, s, tt = extended_gcd(x, y)
                _combine(t, j, i, s % q, tt % q, (-(y // g)) % q, (x // g) % q, q)
    d = sign % q
    for j in range(n):
        d = (d * int(t[j, j])) % q
    return Residue(d, q)


def is_invertible(a: ModMatrix) -> bool:
    """True iff ``a`` is square with unit determinant."""
    return determinant(a).is_unit()


# -- text format -----------------------------------------------------------------

def to_text(a: ModMatrix) -> str:
    """Canonical text form: ``q <q> <rows> <cols>`` then one line per row."""
    lines = [f"q {a.q} {a.rows} {a.cols}"]
    lines += [" ".join(str(int(v)) for v in row) for row in a.data]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> ModMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "q":
        raise ValueError(f"bad matrix header: {lines[0]!r}")
    q, rows, cols = (int(x) for x in head[1:])
    body = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(body) != rows or any(len(r) != cols for r in body):
        raise ValueError(f"matrix body does not match header {rows}x{cols}")
    for r in body:
        for v in r:
            if not 0 <= v < q:
                raise ValueError(f"entry {v} is not a canonical residue mod {q}")
    return ModMatrix(body, q)


def to_dict(a: ModMatrix) -> dict:
    return {"modulus": a.q, "rows": a.rows, "cols": a.cols, "entries": a.tolist()}


def vector(entries: Iterable[int], q: int) -> ModVector:
    return ModVector(list(entries), q)
