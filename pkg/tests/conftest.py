from __future__ import annotations

import random

import pytest

from superclus.quiver import ExtendedQuiver
from superclus.superring import QQ, SuperPolynomial


def skew(size, entries):
    """Build a skew matrix from {(i, j): multiplicity} with i -> j positive."""
    M = [[0] * size for _ in range(size)]
    for (i, j), v in entries.items():
        M[i][j] += v
        M[j][i] -= v
    return tuple(map(tuple, M))


def EQ(n, m, arrows, paths, frozen=()):
    """Extended quiver from arrow and 2-path multiplicity dicts."""
    B = skew(n, arrows)
    N = tuple(skew(m, paths.get(k, {})) for k in range(n))
    return ExtendedQuiver(n, m, B, N, frozenset(frozen))


# small reference quivers; vertices and odd indices are 0-based


@pytest.fixture
def q_width1():
    """One even vertex, 2-path xi1 -> x -> xi2."""
    return EQ(1, 2, {}, {0: {(0, 1): 1}})


@pytest.fixture
def q_a2_super():
    """x1 -> x2 with 2-path xi1 -> x1 -> xi2."""
    return EQ(2, 2, {(0, 1): 1}, {0: {(0, 1): 1}})


@pytest.fixture
def q_a2_super_rev():
    """x2 -> x1 with 2-path xi1 -> x1 -> xi2."""
    return EQ(2, 2, {(1, 0): 1}, {0: {(0, 1): 1}})


@pytest.fixture
def q_three_odd():
    """x1 -> x2; xi2 -> x1 -> xi1; xi1 -> x2 -> xi2 and xi3 -> x2 -> xi2."""
    return EQ(2, 3, {(0, 1): 1}, {0: {(1, 0): 1}, 1: {(0, 1): 1, (2, 1): 1}})


@pytest.fixture
def q_forbidden_a():
    """x1 -> x2; xi1 -> x1 -> xi2 and xi3 -> x2 -> xi4; mu_1 is forbidden."""
    return EQ(2, 4, {(0, 1): 1}, {0: {(0, 1): 1}, 1: {(2, 3): 1}})


def rand_valid_quiver(rng: random.Random, n, m, maxmult=2, path_prob=0.6):
    """Random extended quiver satisfying Condition C by construction."""
    arrows = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-maxmult, maxmult)
            if v > 0:
                arrows[(i, j)] = v
            elif v < 0:
                arrows[(j, i)] = -v
    paths = {}
    for k in range(n):
        if m >= 2 and rng.random() < path_prob:
            idx = list(range(m))
            rng.shuffle(idx)
            r = rng.randint(1, max(1, m // 2))
            s = rng.randint(1, max(1, m - r))
            I, J = idx[:r], idx[r : r + s]
            if not J:
                continue
            t = rng.randint(1, maxmult)
            paths[k] = {(i, j): t for i in I for j in J}
    return EQ(n, m, arrows, paths)


def rand_poly(rng: random.Random, n, m, parity=None, terms=4, span=2):
    t = {}
    for _ in range(rng.randint(1, terms)):
        ev = tuple(rng.randint(-span, span) for _ in range(n))
        size = rng.choice([0, 1, 2])
        if parity is not None and size % 2 != parity:
            size = parity if size == 0 or m < 2 else size - 1
        size = min(size, m)
        od = tuple(sorted(rng.sample(range(m), size)))
        t[(ev, od)] = QQ(rng.randint(-3, 3))
    return SuperPolynomial(n, m, t)
