import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_spd
from intbilevel.errors import NotPositiveDefinite, SearchRegionOverflow, ZeroVector
from intbilevel.proximity import (cook_prox_bound, ellipsoid_linear_max, ew_prox_bound,
                                  flatness_bound, flatness_reis_rothvoss,
                                  integer_minimizers_bruteforce, measure_prox_bruteforce,
                                  prox_bound_quad, prox_diagonal, prox_linear_term_bound,
                                  proximity_bounds)


def test_flatness_bound():
    assert flatness_bound(1) == 1
    assert flatness_bound(4) == 32
    assert flatness_bound(9) == 243
    with pytest.raises(ValueError):
        flatness_bound(0)
    # growth-rate formula is informational and not tied to the certificate
    assert flatness_reis_rothvoss(4) > 0


def test_prox_bound_quad_examples():
    assert prox_bound_quad(np.eye(2)) == pytest.approx(2 ** 2.5 / 4)
    assert prox_bound_quad(np.diag([9.0, 1.0])) == pytest.approx(2 ** 2.5 / 4 * 3)
    assert measure_prox_bruteforce(np.eye(2), [-0.5, -0.5]) <= prox_bound_quad(np.eye(2))
    with pytest.raises(NotPositiveDefinite):
        prox_bound_quad([[1.0, 2.0], [2.0, 1.0]])


def test_prox_bound_quad_fails_in_dimension_one():
    # with Flt(1) = 1 the general bound is 1/4, yet u = 1/2 sits 1/2 from both optima
    assert prox_bound_quad([[1.0]]) == 0.25
    assert measure_prox_bruteforce([[1.0]], [-0.5]) == 0.5


def test_prox_bound_quad_holds_for_n_2_3():
    rng = np.random.default_rng(11)
    for _ in range(150):
        n = int(rng.integers(2, 4))
        Q = random_spd(rng, n)
        d = rng.uniform(-3, 3, n) * np.diag(Q)
        assert measure_prox_bruteforce(Q, d) <= prox_bound_quad(Q) + 1e-9


def test_prox_diagonal():
    assert prox_diagonal(1) == 0.5
    assert prox_diagonal(4) == 1.0
    assert prox_diagonal(2) == math.sqrt(2) / 2
    with pytest.raises(ValueError):
        prox_diagonal(0)
    b = proximity_bounds(np.diag([1.0, 4.0, 9.0]))
    assert b.source == "quad_diagonal" and b.prox_l2 == math.sqrt(3) / 2
    assert (b.lambda_max, b.lambda_min) == (9.0, 1.0)
    assert proximity_bounds([[2.0, 1.0], [1.0, 2.0]]).source == "quad_general"


def test_ellipsoid_linear_max_examples():
    assert ellipsoid_linear_max(np.eye(2), [1, 0], 4) == pytest.approx(2.0)
    assert ellipsoid_linear_max(np.diag([4.0, 1.0]), [1, 0], 1) == pytest.approx(0.5)
    assert ellipsoid_linear_max(np.eye(3), [1, 2, 3], 0) == 0.0
    assert ellipsoid_linear_max(np.eye(2), [0, 0], 1) == 0.0
    with pytest.raises(ValueError):
        ellipsoid_linear_max(np.eye(2), [1, 0], -1)
    with pytest.raises(NotPositiveDefinite):
        ellipsoid_linear_max(-np.eye(2), [1, 0], 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(0.01, 100))
def test_ellipsoid_linear_max_closed_forms(seed, gamma):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    Q = random_spd(rng, n)
    p = rng.standard_normal(n)
    v = ellipsoid_linear_max(Q, p, gamma)
    assert v == pytest.approx(math.sqrt(gamma * p @ np.linalg.solve(Q, p)), rel=1e-9)
    assert v == pytest.approx(math.sqrt(gamma) * ellipsoid_linear_max(Q, p, 1.0), rel=1e-12)
    # attained by x* = sqrt(gamma) Q^-1 p / sqrt(p'Q^-1 p), which is on the boundary
    w = np.linalg.solve(Q, p)
    x = math.sqrt(gamma) * w / math.sqrt(p @ w)
    assert x @ Q @ x == pytest.approx(gamma, rel=1e-9)
    assert p @ x == pytest.approx(v, rel=1e-9)


def test_prox_linear_term_bound():
    assert prox_linear_term_bound(np.eye(1), [1.0]) == pytest.approx(1 / (4 * math.sqrt(2)))
    assert prox_linear_term_bound(np.eye(2), [1.0, 0.0]) == pytest.approx(1.0)
    rng = np.random.default_rng(1)
    Q = random_spd(rng, 3)
    p = rng.standard_normal(3)
    assert prox_linear_term_bound(Q, 3 * p) == pytest.approx(3 * prox_linear_term_bound(Q, p))
    with pytest.raises(ZeroVector):
        prox_linear_term_bound(np.eye(2), [0.0, 0.0])


def test_cook_and_ew():
    assert cook_prox_bound(2, 1) == 2
    assert cook_prox_bound(3, 2) == 6
    assert cook_prox_bound(3, 0) == 0
    assert ew_prox_bound(1, 1) == 3
    assert ew_prox_bound(2, 3) == 338
    assert ew_prox_bound(4, 0) == 4
    with pytest.raises(ValueError):
        cook_prox_bound(0, 1)
    with pytest.raises(ValueError):
        ew_prox_bound(1, -1)


def test_measure_prox_examples():
    assert measure_prox_bruteforce(np.eye(1), [-0.5]) == pytest.approx(0.5)
    assert measure_prox_bruteforce(np.eye(2), [-0.5, -0.5]) == pytest.approx(math.sqrt(2) / 2)
    assert measure_prox_bruteforce(np.eye(2), [0.0, 0.0]) == 0.0
    u, best = integer_minimizers_bruteforce(np.eye(2), [-0.5, -0.5])
    assert len(best) == 4
    # widening the box never finds extra minimizers
    assert measure_prox_bruteforce(np.eye(2), [-0.5, -0.5], box_radius=3) == pytest.approx(math.sqrt(2) / 2)


def test_measure_prox_guards():
    with pytest.raises(ValueError):
        measure_prox_bruteforce(np.eye(4), np.zeros(4))
    # thin ellipsoid, rounding error along the stiff direction: box beyond 1e5 points
    Q = np.array([[1.0, 0.999999], [0.999999, 1.0]])
    with pytest.raises(SearchRegionOverflow):
        measure_prox_bruteforce(Q, -Q @ [0.5, 0.0])


def test_diagonal_samples_never_exceed_sqrt_n_over_2():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3):
        for _ in range(50):
            Q = np.diag(rng.integers(1, 10, n).astype(float))
            d = rng.uniform(-20, 20, n)
            assert measure_prox_bruteforce(Q, d) <= prox_diagonal(n) + 1e-9
