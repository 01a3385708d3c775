import math

import numpy as np
import pytest

from helpers import random_spd
from intbilevel.errors import Infeasible
from intbilevel.exact import solve_exact_lin, solve_exact_quad
from intbilevel.foresight import (certify_ex_ante, certify_linear_case, compose_apx_bound,
                                  frv_leader_costs, lin_constants, relaxed_foresight_lin,
                                  relaxed_foresight_quad)
from intbilevel.instances import GenConfig, example_relaxation, example_tie, gen_lin, gen_quad
from intbilevel.model import LinBilevelInstance, QuadBilevelInstance, Sense, leader_feasible


def test_relaxation_examples():
    r = relaxed_foresight_quad(example_relaxation(2))
    assert r.frv_leader.tolist() == [0]
    assert r.frv_follower_cont[0] == pytest.approx(2 / 3)
    assert r.solution.y.tolist() == [1] and r.solution.leader_obj == 1
    r = relaxed_foresight_quad(example_relaxation(1))
    assert r.frv_leader.tolist() == [0]
    assert r.frv_follower_cont[0] == pytest.approx(1 / 3)
    assert r.solution.y.tolist() == [0] and r.solution.leader_obj == 0


def test_relaxed_value_is_neither_bound():
    # relaxed leader value 2/3 < 1 (integer outcome) in one case, 1/3 > 0 in the other
    for shift, relaxed_is_lower in ((2, True), (1, False)):
        inst = example_relaxation(shift)
        c, const = frv_leader_costs(inst)
        r = relaxed_foresight_quad(inst)
        frv_val = float(c @ r.frv_leader) + const
        exact = solve_exact_quad(inst).leader_obj
        assert (frv_val < exact) == relaxed_is_lower


def test_centered_follower_has_zero_rounding_gap():
    inst = QuadBilevelInstance([1.0, -1.0], [2.0, -3.0], np.zeros((0, 2)), [],
                               [[2.0, 1.0], [1.0, 2.0]], np.zeros((2, 2)), [0.0, 0.0])
    r = relaxed_foresight_quad(inst)
    assert np.allclose(r.frv_follower_cont, 0) and r.solution.y.tolist() == [0, 0]
    c = r.certificate
    assert c.ex_post == pytest.approx(c.L2 * c.prox_used)


def test_frv_costs_by_substitution():
    inst = gen_quad(GenConfig(seed=3, n_x=5, n_y=4, q_kind="bounded_eigenvalues"))
    c, const = frv_leader_costs(inst)
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = rng.integers(0, 2, 5).astype(float)
        y = np.linalg.solve(inst.Q_y, -(inst.C_y @ x + inst.d_y))
        assert c @ x + const == pytest.approx(inst.h_x @ x + inst.d_x @ y, abs=1e-9)


def test_quad_infeasible_leader():
    inst = QuadBilevelInstance([1.0], [1.0], [[1.0]], [-1.0], [[2.0]], [[1.0]], [0.0])
    with pytest.raises(Infeasible):
        relaxed_foresight_quad(inst)


def test_certificate_formulas():
    assert certify_ex_ante(1, 0.5) == 1.0
    assert certify_ex_ante(3, 0) == 0
    assert certify_ex_ante(1, math.sqrt(4) / 2) == 2.0
    assert certify_linear_case(np.eye(1), [1.0]) == pytest.approx(0.35355, abs=1e-5)
    assert certify_linear_case(np.eye(2), [1.0, 0.0]) == pytest.approx(2.0)
    assert compose_apx_bound(10, 2, 1, 1, 1) == 24
    assert compose_apx_bound(7, 1, 0, 3, 0) == 7
    assert compose_apx_bound(7, 1, 0, 2, 0.5) == 7 + certify_ex_ante(2, 0.5)
    with pytest.raises(ValueError):
        compose_apx_bound(1, 0.5, 0, 1, 1)


def test_linear_case_is_tighter():
    from intbilevel.proximity import prox_bound_quad
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        Q = random_spd(rng, n)
        d = rng.standard_normal(n)
        assert certify_linear_case(Q, d) <= certify_ex_ante(np.linalg.norm(d), prox_bound_quad(Q)) * (1 + 1e-12)


def test_quad_certificates_hold():
    for seed in range(12):
        kind = ("diagonal", "cholesky_based", "bounded_eigenvalues")[seed % 3]
        base = gen_quad(GenConfig(seed=seed, n_x=6, n_y=4, q_kind=kind))
        for sense in Sense:
            inst = base.with_sense(sense)
            r = relaxed_foresight_quad(inst)
            assert leader_feasible(inst, r.solution.x)
            f_om = solve_exact_quad(inst).leader_obj
            gap = r.solution.leader_obj - f_om
            assert -1e-9 <= gap <= r.certificate.ex_post + 1e-6
            assert r.certificate.ex_post <= r.certificate.ex_ante + 1e-9
            assert gap <= r.certificate.linear_case + 1e-6
            assert set(r.timings) == {"frv", "follower"}


def test_relaxed_foresight_lin_example():
    # leader min x + y, follower max y s.t. 2y <= 3 + x
    inst = LinBilevelInstance([1.0], [1.0], np.zeros((0, 1)), [], [[-1.0]], [-3.0], [[2.0]],
                              [0.0], [10.0])
    r = relaxed_foresight_lin(inst)
    assert r.frv_leader.tolist() == [0]
    assert r.frv_follower_cont[0] == pytest.approx(1.5)
    assert r.solution.y.tolist() == [1] and r.solution.leader_obj == 1
    assert solve_exact_lin(inst).leader_obj == 1


def test_relaxed_foresight_lin_unimodular():
    # interval matrix rows (consecutive ones) are totally unimodular
    D = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
    inst = LinBilevelInstance([2.0, -1.0], [1.0, 2.0, 1.0], np.zeros((0, 2)), [],
                              [[1.0, 0.0], [0.0, -1.0]], [-4.0, -3.0], D, [0, 0, 0], [3, 3, 3])
    r = relaxed_foresight_lin(inst)
    assert np.allclose(r.frv_follower_cont, np.round(r.frv_follower_cont))
    assert np.array_equal(r.solution.y, np.round(r.frv_follower_cont))
    assert r.solution.leader_obj == solve_exact_lin(inst).leader_obj


def test_relaxed_foresight_lin_infeasible_leader():
    inst = LinBilevelInstance([1.0], [1.0], [[1.0]], [-1.0], [[0.0]], [0.0], [[1.0]], [0.0], [1.0])
    with pytest.raises(Infeasible):
        relaxed_foresight_lin(inst)


def test_lin_certificates_and_sense_invariance():
    for seed in range(30):
        inst = gen_lin(seed)
        r = relaxed_foresight_lin(inst)
        f_om = solve_exact_lin(inst).leader_obj
        gap = r.solution.leader_obj - f_om
        c = r.certificate
        assert -1e-9 <= gap <= min(c.lin_l_inf, c.lin_l1) + 1e-6
        pes = inst.with_sense(Sense.PESSIMISTIC)
        assert relaxed_foresight_lin(pes).solution.leader_obj == r.solution.leader_obj
        assert solve_exact_lin(pes).leader_obj == f_om


def test_lin_constants():
    assert lin_constants([[1, 2], [3, 4]]) == (4, 4, 6)
    assert lin_constants([[0, 0]]) == (1, 1, 5)
