"""Brute-force reference computations, independent of the Howell solver."""

import itertools

import numpy as np


def all_vectors(q, n):
    return itertools.product(range(q), repeat=n)


def image(a, q):
    """Set of all ``a @ x mod q`` for x in C_q^cols, as tuples."""
    a = np.asarray(a, dtype=np.int64)
    return {tuple(int(v) for v in (a @ np.array(x)) % q) for x in all_vectors(q, a.shape[1])}


def solutions(a, b, q):
    a = np.asarray(a, dtype=np.int64)
    b = tuple(int(v) % q for v in b)
    return [x for x in all_vectors(q, a.shape[1]) if tuple(int(v) for v in (a @ np.array(x)) % q) == b]


def has_right_inverse(a, q):
    a = np.asarray(a, dtype=np.int64)
    img = image(a, q)
    return all(tuple(int(v) for v in e) in img for e in np.eye(a.shape[0], dtype=np.int64))


def has_left_inverse(a, q):
    return has_right_inverse(np.asarray(a).T, q)


def cofactor_det(a):
    a = [list(map(int, row)) for row in a]
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * cofactor_det(minor)
    return total


def row_span(rows, q, width):
    """Additive span (a Z/q-submodule) of the given rows, by saturation."""
    span = {tuple([0] * width)}
    frontier = list(span)
    gens = [tuple(int(v) % q for v in r) for r in rows]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((x + y) % q for x, y in zip(v, g))
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return span


def leading_index(v):
    for i, x in enumerate(v):
        if x:
            return i
    return len(v)
