"""Problem data for the two bilevel families and their objective evaluators.

Quadratic family: the leader minimizes ``h_x.x + d_x.y (+ leader_const)``
over binary ``x`` with ``A x <= b``; the follower picks an integer ``y``
minimizing ``1/2 y'Q_y y + (C_y x + d_y)'y``.

Linear family: the leader minimizes ``h_x.x + d.y`` and the follower
maximizes ``d.y`` over integer ``y`` in
``{C_x x + b_y + D_y y <= 0, y_lo <= y <= y_hi}``.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NotPositiveDefinite
from .linalg import cholesky


class Sense(str, Enum):
    OPTIMISTIC = "optimistic"
    PESSIMISTIC = "pessimistic"


class Status(str, Enum):
    OPTIMAL = "optimal"
    INCUMBENT_TIMEOUT = "incumbent_timeout"
    INFEASIBLE = "infeasible"


def _vec(v, dtype=float):
    return np.atleast_1d(np.asarray(v, dtype=dtype))


def _mat(M, rows, cols, dtype=float):
    M = np.asarray(M, dtype=dtype)
    if M.size == 0:
        return M.reshape(rows, cols)
    return M.reshape(M.shape[0], -1) if M.ndim == 1 else M


@dataclass(frozen=True, eq=False)
class QuadBilevelInstance:
    h_x: np.ndarray
    d_x: np.ndarray
    A: np.ndarray
    b: np.ndarray
    Q_y: np.ndarray
    C_y: np.ndarray
    d_y: np.ndarray
    sense: Sense = Sense.OPTIMISTIC
    leader_const: float = 0.0
    name: str = ""
    # generator provenance; informational only
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        h_x = _vec(self.h_x)
        d_x = _vec(self.d_x)
        n_x, n_y = h_x.size, d_x.size
        object.__setattr__(self, "h_x", h_x)
        object.__setattr__(self, "d_x", d_x)
        object.__setattr__(self, "A", _mat(self.A, 0, n_x))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).reshape(-1))
        object.__setattr__(self, "Q_y", np.atleast_2d(np.asarray(self.Q_y, dtype=float)))
        object.__setattr__(self, "C_y", _mat(self.C_y, n_y, n_x))
        object.__setattr__(self, "d_y", _vec(self.d_y))
        object.__setattr__(self, "sense", Sense(self.sense))
        for arr in (self.h_x, self.d_x, self.A, self.b, self.Q_y, self.C_y, self.d_y):
            arr.setflags(write=False)

    @property
    def n_x(self):
        return self.h_x.size

    @property
    def n_y(self):
        return self.d_x.size

    @property
    def m_x(self):
        return self.b.size

    def with_sense(self, sense):
        return QuadBilevelInstance(
            self.h_x, self.d_x, self.A, self.b, self.Q_y, self.C_y, self.d_y,
            Sense(sense), self.leader_const, self.name, dict(self.meta))

    def follower_linear_term(self, x):
        return self.C_y @ _vec(x) + self.d_y

    def __eq__(self, other):
        if not isinstance(other, QuadBilevelInstance):
            return NotImplemented
        arrays = ("h_x", "d_x", "A", "b", "Q_y", "C_y", "d_y")
        return (all(getattr(self, a).shape == getattr(other, a).shape
                    and np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays)
                and self.sense == other.sense
                and self.leader_const == other.leader_const
                and self.name == other.name)


@dataclass(frozen=True, eq=False)
class LinBilevelInstance:
    h_x: np.ndarray
    d: np.ndarray
    A: np.ndarray
    b: np.ndarray
    C_x: np.ndarray
    b_y: np.ndarray
    D_y: np.ndarray
    y_lo: np.ndarray
    y_hi: np.ndarray
    sense: Sense = Sense.OPTIMISTIC
    leader_const: float = 0.0
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        h_x = _vec(self.h_x)
        d = _vec(self.d)
        n_x, n_y = h_x.size, d.size
        b_y = np.asarray(self.b_y, dtype=float).reshape(-1)
        object.__setattr__(self, "h_x", h_x)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "A", _mat(self.A, 0, n_x))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).reshape(-1))
        object.__setattr__(self, "C_x", _mat(self.C_x, b_y.size, n_x))
        object.__setattr__(self, "b_y", b_y)
        object.__setattr__(self, "D_y", _mat(self.D_y, b_y.size, n_y))
        object.__setattr__(self, "y_lo", _vec(self.y_lo))
        object.__setattr__(self, "y_hi", _vec(self.y_hi))
        object.__setattr__(self, "sense", Sense(self.sense))
        for name in ("h_x", "d", "A", "b", "C_x", "b_y", "D_y", "y_lo", "y_hi"):
            getattr(self, name).setflags(write=False)

    @property
    def n_x(self):
        return self.h_x.size

    @property
    def n_y(self):
        return self.d.size

    @property
    def m_y(self):
        return self.b_y.size

    def with_sense(self, sense):
        return LinBilevelInstance(
            self.h_x, self.d, self.A, self.b, self.C_x, self.b_y, self.D_y,
            self.y_lo, self.y_hi, Sense(sense), self.leader_const, self.name, dict(self.meta))

    def follower_rhs(self, x):
        """Right-hand side ``r`` of the follower system ``D_y y <= r``."""
        return -(self.C_x @ _vec(x) + self.b_y)

    def __eq__(self, other):
        if not isinstance(other, LinBilevelInstance):
            return NotImplemented
        arrays = ("h_x", "d", "A", "b", "C_x", "b_y", "D_y", "y_lo", "y_hi")
        return (all(getattr(self, a).shape == getattr(other, a).shape
                    and np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays)
                and self.sense == other.sense
                and self.leader_const == other.leader_const
                and self.name == other.name)


@dataclass
class BilevelSolution:
    x: Optional[np.ndarray]
    y: Optional[np.ndarray]
    leader_obj: float
    follower_obj: float
    status: Status
    # (x, leader value) per enumerated leader point, when requested
    per_x: Optional[list] = None


@dataclass
class FollowerResponse:
    """Continuous minimizer ``u`` and a (tie-broken) integer minimizer ``v``."""
    u: np.ndarray
    v: np.ndarray
    f_cont: float
    f_int: float
    distance_l2: float
    ties: Optional[list] = None


def _check(cond, msg):
    if not cond:
        raise DimensionMismatch(msg)


def leader_objective_quad(inst, x, y):
    x, y = _vec(x), _vec(y)
    _check(x.size == inst.n_x, f"x has length {x.size}, expected {inst.n_x}")
    _check(y.size == inst.n_y, f"y has length {y.size}, expected {inst.n_y}")
    return float(inst.h_x @ x + inst.d_x @ y + inst.leader_const)


def follower_objective_quad(inst, x, y):
    x, y = _vec(x), _vec(y)
    _check(x.size == inst.n_x, f"x has length {x.size}, expected {inst.n_x}")
    _check(y.size == inst.n_y, f"y has length {y.size}, expected {inst.n_y}")
    return float(0.5 * y @ inst.Q_y @ y + inst.follower_linear_term(x) @ y)


def leader_objective_lin(inst, x, y):
    x, y = _vec(x), _vec(y)
    _check(x.size == inst.n_x, f"x has length {x.size}, expected {inst.n_x}")
    _check(y.size == inst.n_y, f"y has length {y.size}, expected {inst.n_y}")
    return float(inst.h_x @ x + inst.d @ y + inst.leader_const)


def follower_objective_lin(inst, y):
    """The follower's (maximized) objective ``d.y``."""
    y = _vec(y)
    _check(y.size == inst.n_y, f"y has length {y.size}, expected {inst.n_y}")
    return float(inst.d @ y)


def leader_feasible(inst, x, tol=1e-9):
    x = _vec(x)
    if not np.all((x == 0) | (x == 1)):
        return False
    return bool(np.all(inst.A @ x <= inst.b + tol))


def follower_feasible_lin(inst, x, y, tol=1e-9):
    y = _vec(y)
    return bool(np.all(inst.D_y @ y <= inst.follower_rhs(x) + tol)
                and np.all(y >= inst.y_lo - tol) and np.all(y <= inst.y_hi + tol))


def validate(inst):
    """Return a list of ``(rule, field, message)`` violations; empty if valid."""
    out = []

    def bad(rule, fld, msg):
        out.append((rule, fld, msg))

    if not isinstance(inst, (QuadBilevelInstance, LinBilevelInstance)):
        return [("UnknownType", "inst", type(inst).__name__)]
    arrays = {k: v for k, v in vars(inst).items() if isinstance(v, np.ndarray)}
    for k, v in arrays.items():
        if not np.all(np.isfinite(v)):
            bad("NonFinite", k, "entries must be finite")
    n_x = inst.n_x
    if inst.A.ndim != 2 or inst.A.shape != (inst.b.size, n_x):
        bad("DimensionMismatch", "A", f"shape {inst.A.shape}, expected ({inst.b.size}, {n_x})")
    if isinstance(inst, QuadBilevelInstance):
        n_y = inst.n_y
        if inst.Q_y.shape != (n_y, n_y):
            bad("DimensionMismatch", "Q_y", f"shape {inst.Q_y.shape}, expected ({n_y}, {n_y})")
        else:
            try:
                cholesky(inst.Q_y)
            except NotPositiveDefinite as exc:
                bad("NotPositiveDefinite", "Q_y", str(exc))
        if inst.C_y.shape != (n_y, n_x):
            bad("DimensionMismatch", "C_y", f"shape {inst.C_y.shape}, expected ({n_y}, {n_x})")
        if inst.d_y.size != n_y:
            bad("DimensionMismatch", "d_y", f"length {inst.d_y.size}, expected {n_y}")
    else:
        n_y, m = inst.n_y, inst.m_y
        if inst.C_x.shape != (m, n_x):
            bad("DimensionMismatch", "C_x", f"shape {inst.C_x.shape}, expected ({m}, {n_x})")
        if inst.D_y.shape != (m, n_y):
            bad("DimensionMismatch", "D_y", f"shape {inst.D_y.shape}, expected ({m}, {n_y})")
        for fld in ("C_x", "b_y", "D_y"):
            v = getattr(inst, fld)
            if np.all(np.isfinite(v)) and not np.array_equal(v, np.round(v)):
                bad("NonIntegral", fld, "entries must be integers")
        if inst.y_lo.size != n_y or inst.y_hi.size != n_y:
            bad("DimensionMismatch", "y_lo/y_hi", f"bounds must have length {n_y}")
        elif np.any(inst.y_lo > inst.y_hi):
            bad("EmptyBounds", "y_lo/y_hi", "y_lo exceeds y_hi")
        elif n_y <= 6 and np.all(inst.y_hi - inst.y_lo < 16) and n_x <= 12 and not out:
            # desk-scale check of follower feasibility for every leader-feasible x
            from .errors import Infeasible
            from .oracles import enumerate_binary, solve_ilp
            for x in enumerate_binary(inst.A, inst.b):
                try:
                    solve_ilp(inst.d, inst.D_y, inst.follower_rhs(x), inst.y_lo, inst.y_hi, maximize=True)
                except Infeasible:
                    bad("FollowerInfeasible", "D_y", f"no follower point for x={x.astype(int).tolist()}")
                    break
    return out
