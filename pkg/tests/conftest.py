import itertools
from fractions import Fraction

import numpy as np
import pytest


def leibniz_det(mat):
    """Permutation-expansion determinant; exact for int/Fraction entries."""
    n = len(mat)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for jj in range(i + 1, n):
                if seen[i] > seen[jj]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod = prod * mat[i][perm[i]]
        total = total + prod
    return total


def esp_brute(values, q):
    """Elementary symmetric polynomial by explicit combinations."""
    if q == 0:
        return 1.0
    out = 0.0
    for comb in itertools.combinations(values, q):
        prod = 1.0
        for v in comb:
            prod *= v
        out += prod
    return out


def minor(mat, rows, cols):
    """Submatrix of 1-based index tuples."""
    m = np.asarray(mat)
    return m[np.ix_([r - 1 for r in rows], [c - 1 for c in cols])]


def spd(rng, m, scale=1.0):
    a = rng.standard_normal((m, m))
    return scale * (a @ a.T + (0.5 + rng.random()) * np.eye(m))


def half_integral(rng, m):
    off = rng.integers(-2, 3, size=(m, m))
    two_t = off + off.T
    np.fill_diagonal(two_t, 0)
    diag = np.abs(two_t).sum(axis=1) + 2 * rng.integers(1, 4, size=m)
    diag += diag % 2
    np.fill_diagonal(two_t, diag)
    return tuple(map(tuple, two_t.tolist()))


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


@pytest.fixture
def oracles():
    return {
        "det": leibniz_det,
        "esp": esp_brute,
        "minor": minor,
        "spd": spd,
        "half_integral": half_integral,
    }
