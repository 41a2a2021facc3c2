"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary.  Random instances use fixed seeds.
"""

import itertools
import time

import numpy as np
import pytest

import oracles
from kqsets.analysis import (
    all_tables,
    character_from_values,
    example1_matrix,
    interpolation_solvable,
    solvability_census,
    subgroup_closure_size,
    verify_generation_level,
    verify_kq_level,
)
from kqsets.kronecker import build_level_matrix, column_for_path, membership, verify_tree_branching
from kqsets.modmatrix import (
    ModMatrix,
    ModVector,
    determinant,
    identity,
    is_invertible,
    left_inverse,
    matmul,
    right_inverse,
    solve,
)

RESULTS: list[str] = []

DISPLAYED = {
    0: [[1]],
    1: [[1, 1], [0, 1]],
    2: [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
    3: [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ],
}
SMALL_CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2), (6, 1), (6, 2)]


def record(number, title, ok, elapsed, limit=None, note=""):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit}s)" if limit else "")
    RESULTS.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  [{timing}] {note}".rstrip())
    print(RESULTS[-1])


def random_matrix(rng, max_q, max_dim):
    q = int(rng.integers(2, max_q + 1))
    r, c = (int(x) for x in rng.integers(1, max_dim + 1, size=2))
    return ModMatrix(rng.integers(0, q, size=(r, c)), q)


def test_c01_golden_matrices():
    t0 = time.perf_counter()
    ok = all(
        build_level_matrix(q, n).matrix.tolist() == DISPLAYED[n]
        for q in (2, 3, 4, 5, 6, 7, 12)
        for n in DISPLAYED
    )
    dt = time.perf_counter() - t0
    record(1, "golden M1, M2, M4, M8", ok and dt < 1, dt, 1)
    assert ok and dt < 1


def test_c02_unitriangular_determinant():
    t0 = time.perf_counter()
    bad = []
    for q in range(2, 13):
        for n in range(0, 9):
            m = build_level_matrix(q, n).matrix
            d = m.data
            tri = np.all(np.diag(d) == 1) and not np.tril(d, -1).any()
            if not (tri and determinant(m).value == 1 and is_invertible(m)):
                bad.append((q, n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record(2, "unitriangular, det 1, invertible (q<=12, n<=8)", ok, dt, 30, f"failures={bad}" if bad else "")
    assert ok


def test_c03_two_sided_inverses():
    t0 = time.perf_counter()
    bad = []
    for q in range(2, 13):
        for n in range(0, 9):
            m = build_level_matrix(q, n).matrix
            eye = identity(m.rows, q)
            left, right = left_inverse(m), right_inverse(m)
            if left is None or right is None or matmul(left, m) != eye or matmul(m, right) != eye:
                bad.append((q, n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record(3, "left and right inverses verify by multiplication", ok, dt, 60, f"failures={bad}" if bad else "")
    assert ok


def test_c04_exhaustive_kq_certificate():
    t0 = time.perf_counter()
    bad = []
    counted = 0
    for q, level in SMALL_CASES:
        lm = build_level_matrix(q, level)
        cols = lm.columns()
        for f in all_tables(lm):
            counted += 1
            if not interpolation_solvable(lm, f):
                bad.append((q, level, "unsolvable"))
                break
            chi = character_from_values(lm, f)
            if any(chi(c) != f(c) for c in cols):
                bad.append((q, level, "mismatch"))
                break
        rep = verify_kq_level(lm, "exhaustive")
        if not rep.passed or rep.details["checked"] != q ** lm.size:
            bad.append((q, level, "report"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    record(4, f"exhaustive K_q interpolation ({counted} tables)", ok, dt, 10, f"failures={bad}" if bad else "")
    assert ok


def test_c05_exhaustive_generation_certificate():
    t0 = time.perf_counter()
    bad = []
    for q, level in SMALL_CASES:
        lm = build_level_matrix(q, level)
        size = subgroup_closure_size(lm)
        if size != q ** lm.size or not verify_generation_level(lm, "closure").passed:
            bad.append((q, level, size))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    record(5, "closure BFS reaches all of C_q^n", ok, dt, 10, f"failures={bad}" if bad else "")
    assert ok


def test_c06_mode_agreement():
    t0 = time.perf_counter()
    disagreements = []
    for q, level in SMALL_CASES:
        lm = build_level_matrix(q, level)
        if verify_kq_level(lm, "fast").passed != verify_kq_level(lm, "exhaustive").passed:
            disagreements.append(("kq", q, level))
        if verify_generation_level(lm, "fast").passed != verify_generation_level(lm, "closure").passed:
            disagreements.append(("gen", q, level))
    rng = np.random.default_rng(20261015)
    for _ in range(200):
        m = random_matrix(rng, 6, 3)
        if verify_kq_level(m, "fast").passed != verify_kq_level(m, "exhaustive").passed:
            disagreements.append(("kq", m.tolist(), m.q))
        if verify_generation_level(m, "fast").passed != verify_generation_level(m, "closure").passed:
            disagreements.append(("gen", m.tolist(), m.q))
    dt = time.perf_counter() - t0
    ok = not disagreements
    record(6, "fast vs brute-force verifier agreement", ok, dt, note=f"disagreements={len(disagreements)}")
    assert ok, disagreements[:5]


def test_c07_example1():
    t0 = time.perf_counter()
    deviations = []
    for q in (2, 3, 4):
        for n in range(1, 7):
            m = example1_matrix(q, n)
            if left_inverse(m) is not None:
                deviations.append((q, n, "left inverse found"))
            r = right_inverse(m)
            if r is None or matmul(m, r) != identity(n, q):
                deviations.append((q, n, "no right inverse"))
            census = solvability_census(m)
            if not census.matches_zero_rule or census.solvable != q**n:
                deviations.append((q, n, "census", census))
    dt = time.perf_counter() - t0
    ok = not deviations
    record(7, "Example-1 family: no left inverse, right inverse, f(0)=0 census", ok, dt,
           note=f"deviations={len(deviations)}")
    assert ok, deviations


def test_c08_membership_facts():
    t0 = time.perf_counter()
    finite = ModVector([1, 1, 0, 0, 0, 1, 0, 0], 5)   # e1 + e2 + e6
    infinite = ModVector([1, 1, 0, 1, 0, 0, 0, 1], 5)  # e1 + e2 + e4 + e8
    m8 = build_level_matrix(5, 3)
    ok = membership(finite) == 6 and m8.column(6) == finite
    ok &= membership(infinite) == 8 and m8.column(8) == infinite
    ok &= column_for_path(5, (1, 0, 1)) == (6, finite)
    ok &= column_for_path(5, (1, 1, 1)) == (8, infinite)
    for n in range(0, 9):
        lm = build_level_matrix(2, n)
        hits = [column_for_path(2, p) for p in itertools.product((0, 1), repeat=n)]
        ok &= sorted(i for i, _ in hits) == list(range(1, 2**n + 1))
        ok &= all(lm.column(i) == c for i, c in hits)
    dt = time.perf_counter() - t0
    record(8, "e1+e2+e6 is column 6, e1+e2+e4+e8 is column 8 of M8; path bijection n<=8", ok, dt)
    assert ok


def test_c09_solver_oracle_equivalence():
    t0 = time.perf_counter()
    disagreements = []
    rng = np.random.default_rng(9)
    for _ in range(500):
        a = random_matrix(rng, 8, 3)
        q = a.q
        b = rng.integers(0, q, size=a.rows)
        x = solve(a, ModVector(b, q))
        sols = oracles.solutions(a.data, b, q)
        if (x is None) != (not sols) or (x is not None and (a @ x).to_tuple() != tuple(int(v) for v in b)):
            disagreements.append(("solve", a, b))
        left, right = left_inverse(a), right_inverse(a)
        if (left is not None) != oracles.has_left_inverse(a.data, q):
            disagreements.append(("left", a))
        if (right is not None) != oracles.has_right_inverse(a.data, q):
            disagreements.append(("right", a))
        if left is not None and matmul(left, a) != identity(a.cols, q):
            disagreements.append(("left-check", a))
        if right is not None and matmul(a, right) != identity(a.rows, q):
            disagreements.append(("right-check", a))
    dt = time.perf_counter() - t0
    ok = not disagreements and dt < 60
    record(9, "solve / inverses vs enumeration on 500 systems", ok, dt, 60,
           f"disagreements={len(disagreements)}")
    assert ok, disagreements[:5]


def test_c10_tree_perfectness():
    t0 = time.perf_counter()
    failures = []
    for q in range(2, 13):
        for n in range(0, 8):
            rep = verify_tree_branching(q, n)
            if not rep.passed:
                failures.append((q, n, rep.violations[:3]))
    dt = time.perf_counter() - t0
    ok = not failures
    record(10, "binary tree: two distinct children per node, disjoint levels", ok, dt,
           note=f"failures={len(failures)}")
    assert ok, failures
