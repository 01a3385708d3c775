"""Relaxed Foresight: solve the bilevel problem with a continuous follower,
then let the real (integer) follower respond to the chosen leader move.

The additive gap to the true optimum is bounded through the proximity of
the follower problem; see :class:`GapCertificate`.
"""
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import Infeasible, ZeroVector
from .linalg import cholesky, max_abs_entry, max_abs_subdeterminant, solve_spd
from .model import (BilevelSolution, LinBilevelInstance, QuadBilevelInstance, Sense, Status,
                    follower_objective_lin, follower_objective_quad, leader_objective_lin,
                    leader_objective_quad)
from .oracles import (Direction, LexSpec, _is_diagonal, enumerate_binary, minimize_iqp_lex,
                      solve_binary_linear, solve_ilp, solve_lp)
from .proximity import cook_prox_bound, ew_prox_bound, prox_bound_quad, prox_diagonal, \
    prox_linear_term_bound


@dataclass
class GapCertificate:
    L2: float
    prox_used: float
    ex_ante: float
    ex_post: float
    linear_case: Optional[float] = None  # quadratic family only
    lin_l_inf: Optional[float] = None  # linear family only
    lin_l1: Optional[float] = None


@dataclass
class ApproxResult:
    solution: BilevelSolution
    frv_leader: np.ndarray
    frv_follower_cont: np.ndarray
    certificate: GapCertificate
    timings: dict = field(default_factory=dict)  # frv / follower seconds

    @property
    def total_time(self):
        return self.timings.get("frv", 0.0) + self.timings.get("follower", 0.0)


def certify_ex_ante(L2, prox):
    """``2 L2 prox``: gap bound known before solving anything."""
    if L2 < 0 or prox < 0:
        raise ValueError("L2 and prox must be >= 0")
    return 2.0 * L2 * prox


def certify_ex_post(L2, prox, dist):
    """``L2 (prox + ||y_am - yhat_am||)``, using the realized rounding distance."""
    return L2 * (prox + dist)


def certify_linear_case(Q, d_x):
    """Gap bound for a linear leader term ``d_x.y``; twice the proximity of ``d_x.y``."""
    return 2.0 * prox_linear_term_bound(Q, d_x)


def compose_apx_bound(f_om, alpha, beta, L2, prox):
    """Leader value bound ``alpha f_om + beta + (alpha + 1) L2 prox`` for an
    ``(alpha, beta)``-approximate relaxed solve."""
    if alpha < 1 or beta < 0:
        raise ValueError("need alpha >= 1 and beta >= 0")
    return alpha * f_om + beta + (alpha + 1) * L2 * prox


def lex_for(sense, secondary):
    """Pessimistic followers maximize the leader's term among ties, optimistic ones minimize it."""
    direction = Direction.MAXIMIZE if Sense(sense) is Sense.PESSIMISTIC else Direction.MINIMIZE
    return LexSpec(np.asarray(secondary, dtype=float), direction)


def frv_leader_costs(inst):
    """Leader cost vector and constant once ``y = -Q^-1 (C x + d_y)`` is substituted."""
    R = cholesky(inst.Q_y)
    w = solve_spd(inst.Q_y, inst.d_x, R)  # Q^-1 d_x (Q symmetric)
    return inst.h_x - inst.C_y.T @ w, -float(w @ inst.d_y) + inst.leader_const


def quad_prox(Q):
    return prox_diagonal(Q.shape[0]) if _is_diagonal(Q) else prox_bound_quad(Q)


def relaxed_foresight_quad(inst: QuadBilevelInstance) -> ApproxResult:
    t0 = time.perf_counter()
    c, _ = frv_leader_costs(inst)
    x, _ = solve_binary_linear(c, inst.A, inst.b)
    y_hat = -solve_spd(inst.Q_y, inst.follower_linear_term(x))
    t1 = time.perf_counter()
    resp = minimize_iqp_lex(inst.Q_y, inst.follower_linear_term(x), lex_for(inst.sense, inst.d_x))
    t2 = time.perf_counter()
    y = resp.v
    sol = BilevelSolution(x.astype(np.int64), y, leader_objective_quad(inst, x, y),
                          follower_objective_quad(inst, x, y), Status.OPTIMAL)

    L2 = float(np.linalg.norm(inst.d_x))
    prox = quad_prox(inst.Q_y)
    dist = float(np.linalg.norm(y - y_hat))
    try:
        lin = certify_linear_case(inst.Q_y, inst.d_x)
    except ZeroVector:
        lin = 0.0
    cert = GapCertificate(L2=L2, prox_used=prox, ex_ante=certify_ex_ante(L2, prox),
                          ex_post=certify_ex_post(L2, prox, dist), linear_case=lin)
    return ApproxResult(sol, sol.x, y_hat, cert, {"frv": t1 - t0, "follower": t2 - t1})


def lin_constants(D):
    """``(Delta, delta, m)`` for the follower system ``D y <= r`` with box bounds.

    The bound rows ``I`` and ``-I`` join the constraint matrix, so
    ``Delta >= 1``, ``delta >= 1`` and ``m`` counts them too.
    """
    D = np.atleast_2d(np.asarray(D))
    rows, n = D.shape
    Delta = max(max_abs_subdeterminant(D) if D.size else 0, 1)
    delta = max(max_abs_entry(D), 1)
    return Delta, delta, rows + 2 * n


def lin_certificate(inst):
    """Linear-family bounds; ``ex_ante``/``ex_post`` carry the smaller of the two."""
    Delta, delta, m = lin_constants(inst.D_y)
    n = inst.n_y
    d = inst.d
    l_inf = 2.0 * float(np.abs(d).sum()) * cook_prox_bound(n, Delta)
    l1 = 2.0 * float(np.abs(d).max()) * ew_prox_bound(m, delta)
    best = min(l_inf, l1)
    return GapCertificate(L2=float(np.linalg.norm(d)), prox_used=cook_prox_bound(n, Delta),
                          ex_ante=best, ex_post=best, lin_l_inf=l_inf, lin_l1=l1)


def relaxed_foresight_lin(inst: LinBilevelInstance) -> ApproxResult:
    t0 = time.perf_counter()
    xs = enumerate_binary(inst.A, inst.b)
    if not xs:
        raise Infeasible("no binary point satisfies A x <= b")
    best = None
    for x in xs:
        try:
            lp = solve_lp(inst.d, inst.D_y, inst.follower_rhs(x), inst.y_lo, inst.y_hi,
                          maximize=True)
        except Infeasible:
            continue
        val = float(inst.h_x @ x) + lp.value
        # strict improvement keeps the lexicographically first x on ties
        if best is None or val < best[0] - 1e-9 * (1.0 + abs(best[0])):
            best = (val, x, lp.y)
    if best is None:
        raise Infeasible("the follower relaxation is infeasible for every leader point")
    _, x, y_hat = best
    t1 = time.perf_counter()
    res = solve_ilp(inst.d, inst.D_y, inst.follower_rhs(x), inst.y_lo, inst.y_hi, maximize=True)
    t2 = time.perf_counter()
    y = res.y
    sol = BilevelSolution(x.astype(np.int64), y, leader_objective_lin(inst, x, y),
                          follower_objective_lin(inst, y), Status.OPTIMAL)
    return ApproxResult(sol, sol.x, y_hat, lin_certificate(inst),
                        {"frv": t1 - t0, "follower": t2 - t1})
