import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from intbilevel.errors import DimensionTooLarge, NotPositiveDefinite
from intbilevel.linalg import (cholesky, eigen_extremes, haar_orthogonal, max_abs_subdeterminant,
                               solve_spd)


def random_spd(rng, n):
    M = rng.standard_normal((n, n))
    return M.T @ M + 0.5 * np.eye(n)


def test_cholesky_examples():
    assert np.array_equal(cholesky(np.eye(2)), np.eye(2))
    assert np.allclose(cholesky(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    Q = np.array([[2.0, 1.0], [1.0, 2.0]])
    R = cholesky(Q)
    assert np.allclose(R.T @ R, Q, atol=1e-10)
    assert np.allclose(R, np.triu(R))


@pytest.mark.parametrize("Q", [
    [[1.0, 0.0], [0.0, -1.0]],
    [[1.0, 2.0], [2.0, 1.0]],
    [[1.0, 0.5], [0.0, 1.0]],  # not symmetric
    [[0.0]],
])
def test_cholesky_rejects(Q):
    with pytest.raises(NotPositiveDefinite):
        cholesky(Q)


def test_cholesky_reconstructs_random():
    rng = np.random.default_rng(3)
    for n in range(1, 9):
        Q = random_spd(rng, n)
        R = cholesky(Q)
        assert np.max(np.abs(R.T @ R - Q)) <= 1e-8 * (1 + np.max(np.abs(Q)))


def test_solve_spd_examples():
    assert np.allclose(solve_spd(np.eye(2), [3, -1]), [3, -1])
    assert np.allclose(solve_spd([[18.0]], [-12.0]), [-2 / 3])
    assert np.allclose(solve_spd([[2.0, 1.0], [1.0, 2.0]], [3.0, 3.0]), [1, 1])


def test_solve_spd_residual():
    rng = np.random.default_rng(4)
    for n in (1, 3, 10, 20):
        Q = random_spd(rng, n)
        c = rng.standard_normal(n)
        x = solve_spd(Q, c)
        assert np.max(np.abs(Q @ x - c)) <= 1e-8 * (1 + np.max(np.abs(c)))
    C = rng.standard_normal((4, 2))
    Q = random_spd(rng, 4)
    assert np.allclose(Q @ solve_spd(Q, C), C)


def test_eigen_extremes_examples():
    assert eigen_extremes(np.diag([1.0, 9.0])) == (9.0, 1.0)
    hi, lo = eigen_extremes([[2.0, 1.0], [1.0, 2.0]])
    assert hi == pytest.approx(3.0, abs=1e-12) and lo == pytest.approx(1.0, abs=1e-12)
    U = haar_orthogonal(2, 11)
    hi, lo = eigen_extremes(U @ np.diag([5.0, 2.0]) @ U.T)
    assert abs(hi - 5) < 1e-8 and abs(lo - 2) < 1e-8


def test_eigen_extremes_match_numpy():
    rng = np.random.default_rng(5)
    for n in (1, 2, 5, 10, 20):
        Q = random_spd(rng, n)
        w = np.linalg.eigvalsh(Q)
        hi, lo = eigen_extremes(Q)
        assert abs(hi - w[-1]) <= 1e-8 * max(1, w[-1]) and abs(lo - w[0]) <= 1e-8 * max(1, w[-1])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
def test_eigen_extremes_similarity(n, seed):
    rng = np.random.default_rng(seed)
    D = rng.integers(1, 10, n).astype(float)
    U = haar_orthogonal(n, rng)
    hi, lo = eigen_extremes(U @ np.diag(D) @ U.T)
    assert abs(hi - D.max()) <= 1e-8 and abs(lo - D.min()) <= 1e-8


def test_haar_orthogonal():
    U1 = haar_orthogonal(1, 0)
    assert abs(abs(U1[0, 0]) - 1.0) < 1e-15
    for seed in range(5):
        U = haar_orthogonal(3, seed)
        assert np.max(np.abs(U.T @ U - np.eye(3))) <= 1e-10
    assert np.array_equal(haar_orthogonal(3, 42), haar_orthogonal(3, 42))
    assert not np.array_equal(haar_orthogonal(3, 42), haar_orthogonal(3, 43))
    with pytest.raises(ValueError):
        haar_orthogonal(0, 1)


def test_haar_first_entry_distribution():
    # for Haar U in dimension n, U[0, 0]^2 ~ Beta(1/2, (n-1)/2) with mean 1/n
    n, N = 4, 4000
    rng = np.random.default_rng(8)
    vals = np.array([haar_orthogonal(n, rng)[0, 0] for _ in range(N)])
    assert abs(np.mean(vals ** 2) - 1 / n) < 0.02
    assert abs(np.mean(vals > 0) - 0.5) < 0.04


def test_max_abs_subdeterminant_examples():
    assert max_abs_subdeterminant(np.eye(3, dtype=int)) == 1
    assert max_abs_subdeterminant([[1, 2], [3, 4]]) == 4
    assert max_abs_subdeterminant(np.zeros((2, 3), dtype=int)) == 0
    assert max_abs_subdeterminant([[2, 1], [-1, 2]]) == 5


def test_max_abs_subdeterminant_guard_and_integrality():
    with pytest.raises(DimensionTooLarge):
        max_abs_subdeterminant(np.eye(9, dtype=int))
    with pytest.raises(ValueError):
        max_abs_subdeterminant([[0.5]])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_max_abs_subdeterminant_invariance(r, c, seed):
    rng = np.random.default_rng(seed)
    D = rng.integers(-3, 4, (r, c))
    base = max_abs_subdeterminant(D)
    assert max_abs_subdeterminant(D.T) == base
    assert max_abs_subdeterminant(D[rng.permutation(r)][:, rng.permutation(c)]) == base
    # agrees with floating-point determinants of every square submatrix
    from itertools import combinations
    best = 0.0
    for k in range(1, min(r, c) + 1):
        for rs in combinations(range(r), k):
            for cs in combinations(range(c), k):
                best = max(best, abs(np.linalg.det(D[np.ix_(rs, cs)])))
    assert base == round(best)
