"""Reference bilevel solvers: enumerate every feasible binary leader move and
solve the follower's integer problem for each one.
"""
import time
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible
from .model import (BilevelSolution, Status, follower_objective_lin, follower_objective_quad,
                    leader_objective_lin, leader_objective_quad)
from .oracles import enumerate_binary, minimize_iqp_lex, solve_ilp
from .foresight import lex_for


@dataclass(frozen=True)
class ExactConfig:
    time_limit: float = 120.0
    record_all: bool = False

    def __post_init__(self):
        if not self.time_limit > 0:
            raise ValueError("time_limit must be > 0")


def _enumerate(inst, cfg, respond, leader, follower):
    """Shared loop. ``respond(x)`` returns ``y`` or raises :class:`Infeasible`."""
    cfg = cfg or ExactConfig()
    start = time.perf_counter()
    xs = enumerate_binary(inst.A, inst.b)
    if not xs:
        raise Infeasible("no binary point satisfies A x <= b")
    best = None
    per_x = [] if cfg.record_all else None
    status = Status.OPTIMAL
    for k, x in enumerate(xs):
        # the time limit is checked between subproblems; the first one always runs
        if k and time.perf_counter() - start > cfg.time_limit:
            status = Status.INCUMBENT_TIMEOUT
            break
        try:
            y = respond(x)
        except Infeasible:
            continue
        val = leader(inst, x, y)
        if per_x is not None:
            per_x.append((x.astype(np.int64), val))
        # xs come in lexicographic order, so strict improvement keeps the first minimizer
        if best is None or val < best[0] - 1e-9 * (1.0 + abs(best[0])):
            best = (val, x, y)
    if best is None:
        if status is Status.INCUMBENT_TIMEOUT:
            return BilevelSolution(None, None, float("inf"), float("inf"), status, per_x)
        raise Infeasible("no leader point admits a follower response")
    val, x, y = best
    return BilevelSolution(x.astype(np.int64), y, val, follower(inst, x, y), status, per_x)


def solve_exact_quad(inst, cfg=None):
    c_lex = lex_for(inst.sense, inst.d_x)
    return _enumerate(
        inst, cfg,
        lambda x: minimize_iqp_lex(inst.Q_y, inst.follower_linear_term(x), c_lex).v,
        leader_objective_quad, follower_objective_quad)


def solve_exact_lin(inst, cfg=None):
    # leader and follower weigh y through the same d, so follower ties cannot
    # change the leader value and the sense is irrelevant
    return _enumerate(
        inst, cfg,
        lambda x: solve_ilp(inst.d, inst.D_y, inst.follower_rhs(x), inst.y_lo, inst.y_hi,
                            maximize=True).y,
        leader_objective_lin, lambda i, x, y: follower_objective_lin(i, y))
