import itertools
import math

import numpy as np
import pytest

from sturmverify import (
    ExteriorMatrix,
    NotPositiveDefiniteError,
    SubsetBasis,
    elementary_symmetric,
    eps,
    exterior_power,
    exterior_power_batch,
    q_subsets,
    sqcap,
    sym_sqrt,
    trace_sandwich,
)
from conftest import esp_brute, leibniz_det, minor, spd


def test_q_subsets_lexicographic():
    assert q_subsets(3, 0) == ((),)
    assert q_subsets(3, 1) == ((1,), (2,), (3,))
    assert q_subsets(3, 2) == ((1, 2), (1, 3), (2, 3))
    assert q_subsets(4, 2)[0] == (1, 2)
    for m in range(1, 7):
        for q in range(m + 1):
            subs = q_subsets(m, q)
            assert len(subs) == math.comb(m, q)
            assert list(subs) == sorted(subs)


def test_subset_basis_index_roundtrip():
    basis = SubsetBasis(5, 3)
    for pos, subset in enumerate(basis.subsets):
        assert basis.index(subset) == pos
    assert len(basis) == math.comb(5, 3)


def test_eps_hand_values():
    assert eps((1,), (2,)) == 1
    assert eps((2,), (1,)) == -1
    assert eps((1, 3), (2,)) == -1
    assert eps((1, 2), (3, 4)) == 1
    assert eps((3, 4), (1, 2)) == 1  # 4 crossings, even
    assert eps((), (1, 2)) == 1


def test_eps_matches_permutation_sign():
    # sign of the permutation sorting the concatenation
    for m in range(2, 6):
        for p in range(m + 1):
            for a1 in itertools.combinations(range(1, m + 1), p):
                rest = [i for i in range(1, m + 1) if i not in a1]
                for q in range(len(rest) + 1):
                    for a2 in itertools.combinations(rest, q):
                        concat = list(a1) + list(a2)
                        inv = sum(
                            1
                            for i in range(len(concat))
                            for j in range(i + 1, len(concat))
                            if concat[i] > concat[j]
                        )
                        assert eps(a1, a2) == (-1) ** inv


def test_eps_validation():
    with pytest.raises(ValueError):
        eps((2, 1), (3,))
    with pytest.raises(ValueError):
        eps((1, 2), (2,))


def test_exterior_power_edge_degrees(rng):
    mat = rng.uniform(-2, 2, (4, 4))
    assert exterior_power(mat, 0).entries.shape == (1, 1)
    assert exterior_power(mat, 0).entries[0, 0] == 1.0
    np.testing.assert_allclose(exterior_power(mat, 1).entries, mat)
    assert exterior_power(mat, 4).entries[0, 0] == pytest.approx(np.linalg.det(mat), rel=1e-12)


def test_exterior_power_entries_are_minors(rng):
    for _ in range(10):
        m = int(rng.integers(2, 6))
        q = int(rng.integers(1, m + 1))
        mat = rng.integers(-4, 5, (m, m))
        power = exterior_power(mat.astype(float), q)
        basis = power.basis
        for a in basis.subsets:
            for b in basis.subsets:
                exact = leibniz_det(minor(mat, a, b).tolist())
                got = power.entries[basis.index(a), basis.index(b)]
                assert got == pytest.approx(exact, rel=1e-9, abs=1e-9)


def test_exterior_power_identity():
    for m in range(1, 6):
        for q in range(m + 1):
            np.testing.assert_allclose(
                exterior_power(np.eye(m), q).entries, np.eye(math.comb(m, q))
            )


def test_functoriality(rng):
    for _ in range(60):
        m = int(rng.integers(2, 6))
        q = int(rng.integers(0, m + 1))
        a = rng.uniform(-2, 2, (m, m))
        b = rng.uniform(-2, 2, (m, m))
        lhs = exterior_power(a @ b, q).entries
        rhs = (exterior_power(a, q) @ exterior_power(b, q)).entries
        ref = max(np.max(np.abs(lhs)), 1.0)
        assert np.max(np.abs(lhs - rhs)) / ref <= 1e-10


def test_inverse_commutes(rng):
    for _ in range(10):
        m = int(rng.integers(2, 5))
        a = spd(rng, m)
        q = int(rng.integers(1, m + 1))
        lhs = exterior_power(np.linalg.inv(a), q).entries
        rhs = np.linalg.inv(exterior_power(a, q).entries)
        assert np.max(np.abs(lhs - rhs)) <= 1e-9 * max(1.0, np.max(np.abs(rhs)))


def test_transpose_commutes(rng):
    mat = rng.uniform(-3, 3, (5, 5))
    for q in range(6):
        np.testing.assert_allclose(
            exterior_power(mat.T, q).entries, exterior_power(mat, q).entries.T, atol=1e-12
        )
    op = exterior_power(mat, 2)
    np.testing.assert_allclose(op.transpose().entries, op.entries.T)


def test_exterior_matrix_validation():
    with pytest.raises(ValueError):
        ExteriorMatrix(3, 2, np.zeros((2, 2)))
    with pytest.raises(ValueError):
        ExteriorMatrix(3, 5, np.zeros((1, 1)))


def test_exterior_power_batch_matches_loop(rng):
    mats = rng.uniform(-1.5, 1.5, (7, 4, 4))
    for q in range(5):
        batch = exterior_power_batch(mats, q)
        for i in range(7):
            np.testing.assert_allclose(
                batch[i], exterior_power(mats[i], q).entries, rtol=1e-12, atol=1e-12
            )


def test_sqcap_hand_formula_genus_two(rng):
    a = rng.uniform(-1, 1, (2, 2))
    b = rng.uniform(-1, 1, (2, 2))
    got = sqcap(exterior_power(a, 1), exterior_power(b, 1)).entries[0, 0]
    want = 0.5 * (a[0, 0] * b[1, 1] - a[0, 1] * b[1, 0] - a[1, 0] * b[0, 1] + a[1, 1] * b[0, 0])
    assert got == pytest.approx(want, rel=1e-14)


def test_sqcap_degree_zero_is_identity_action(rng):
    m = 4
    a = rng.uniform(-2, 2, (m, m))
    x = exterior_power(a, 2)
    out = sqcap(exterior_power(np.eye(m), 0), x)
    np.testing.assert_allclose(out.entries, x.entries)


def test_sqcap_closure(rng):
    for _ in range(60):
        m = int(rng.integers(2, 6))
        p = int(rng.integers(0, m + 1))
        q = int(rng.integers(0, m - p + 1))
        a = rng.uniform(-2, 2, (m, m))
        lhs = sqcap(exterior_power(a, p), exterior_power(a, q)).entries
        rhs = exterior_power(a, p + q).entries
        ref = max(np.max(np.abs(rhs)), 1.0)
        assert np.max(np.abs(lhs - rhs)) / ref <= 1e-10


def test_sqcap_genus_mismatch():
    with pytest.raises(ValueError):
        sqcap(exterior_power(np.eye(2), 1), exterior_power(np.eye(3), 1))


def test_sym_sqrt_squares_back(rng):
    for _ in range(10):
        m = int(rng.integers(1, 6))
        y = spd(rng, m)
        root = sym_sqrt(y)
        np.testing.assert_allclose(root @ root, y, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(root, root.T, atol=1e-12)


def test_sym_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        sym_sqrt(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_elementary_symmetric_brute_force(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        vals = rng.uniform(-2, 2, n)
        for q in range(n + 1):
            assert elementary_symmetric(vals, q) == pytest.approx(
                esp_brute(vals, q), rel=1e-12, abs=1e-12
            )


def test_trace_sandwich_eigenvalue_oracle(rng):
    for _ in range(25):
        m = int(rng.integers(1, 6))
        y = spd(rng, m)
        t = spd(rng, m)
        eig = np.linalg.eigvals(y @ t).real
        for q in range(m + 1):
            want = esp_brute(eig, q)
            assert trace_sandwich(y, t, q) == pytest.approx(want, rel=1e-9, abs=1e-9)


def test_trace_sandwich_edge_degrees(rng):
    m = 3
    y = spd(rng, m)
    t = spd(rng, m)
    assert trace_sandwich(y, t, 0) == pytest.approx(1.0)
    want = np.linalg.det(y) * np.linalg.det(t)
    assert trace_sandwich(y, t, m) == pytest.approx(want, rel=1e-11)
    assert trace_sandwich(y, t, 1) == pytest.approx(np.trace(y @ t), rel=1e-11)


def test_trace_sandwich_batch_matches_single(rng):
    ys = np.stack([spd(rng, 3) for _ in range(6)])
    t = spd(rng, 3)
    for q in range(4):
        batch = trace_sandwich(ys, t, q)
        assert batch.shape == (6,)
        for i in range(6):
            assert batch[i] == pytest.approx(trace_sandwich(ys[i], t, q), rel=1e-12)
