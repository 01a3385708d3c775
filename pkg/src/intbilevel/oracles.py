"""Exact desk-scale oracles used in place of a commercial MIP solver.

* :func:`solve_binary_linear` -- enumerate ``{0,1}^n`` under ``A x <= b``.
* :func:`minimize_iqp` / :func:`minimize_iqp_lex` -- unconstrained integer
  convex quadratic minimization with an optimistic/pessimistic secondary
  objective among tied optima.
* :func:`solve_lp` / :func:`solve_ilp` -- bounded dense simplex (Bland's
  rule) and branch-and-bound on top of it.
"""
import math
from dataclasses import dataclass
from enum import Enum
from itertools import product

import numpy as np

from .errors import DimensionTooLarge, Infeasible, NotDiagonal, SearchRegionOverflow
from .linalg import cholesky, solve_spd, spd_inverse
from .model import FollowerResponse

MAX_BINARY_DIM = 24
MAX_INT_DIM = 24
BOX_ENUM_LIMIT = 10 ** 5
BOX_OVERFLOW_LIMIT = 10 ** 9
TREE_NODE_LIMIT = 10 ** 8
TIE_RTOL = 1e-6
LP_TOL = 1e-9
INT_TOL = 1e-6
_CHUNK_BITS = 16


class Direction(str, Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


@dataclass(frozen=True)
class LexSpec:
    """Secondary objective used to break ties among follower optima.

    ``MAXIMIZE`` encodes the pessimistic follower, ``MINIMIZE`` the
    optimistic one (the secondary objective is the leader's ``d_x``).
    """
    secondary: np.ndarray
    direction: Direction = Direction.MINIMIZE


# --------------------------------------------------------------------------
# binary enumeration


def _bit_rows(n, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(float)


def _binary_chunks(n):
    total = 1 << n
    step = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, step):
        yield _bit_rows(n, start, min(total, start + step))


def enumerate_binary(A, b, tol=1e-9):
    """All binary ``x`` with ``A x <= b`` in lexicographic order."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    n = A.shape[1]
    if n > MAX_BINARY_DIM:
        raise DimensionTooLarge(f"{n} binary variables > {MAX_BINARY_DIM}")
    out = []
    for X in _binary_chunks(n):
        ok = np.all(X @ A.T <= b + tol, axis=1) if b.size else np.ones(len(X), bool)
        out.extend(X[ok])
    return out


def solve_binary_linear(c, A=None, b=None, tol=1e-9):
    """Minimize ``c.x`` over binary ``x`` with ``A x <= b``.

    Values within ``tol * (1 + |best|)`` of the minimum count as ties,
    resolved in favour of the lexicographically smallest bit string.

    Returns
    -------
    (x, value)
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.size
    if n > MAX_BINARY_DIM:
        raise DimensionTooLarge(f"{n} binary variables > {MAX_BINARY_DIM}")
    if A is None or np.size(A) == 0:
        A = np.zeros((0, n))
        b = np.zeros(0)
    A = np.asarray(A, dtype=float).reshape(-1, n)
    b = np.asarray(b, dtype=float).reshape(-1)
    best_val = math.inf
    feasible_vals = []
    for X in _binary_chunks(n):
        ok = np.all(X @ A.T <= b + 1e-9, axis=1) if b.size else np.ones(len(X), bool)
        vals = np.where(ok, X @ c, np.inf)
        feasible_vals.append((X, vals))
        if ok.any():
            best_val = min(best_val, float(vals.min()))
    if best_val == math.inf:
        raise Infeasible("no binary point satisfies A x <= b")
    thresh = best_val + tol * (1.0 + abs(best_val))
    for X, vals in feasible_vals:
        hit = np.flatnonzero(vals <= thresh)
        if hit.size:
            x = X[hit[0]]
            return x, float(c @ x)
    raise AssertionError("unreachable")


# --------------------------------------------------------------------------
# integer convex quadratic minimization


def _is_integral(a):
    a = np.asarray(a, dtype=float)
    return bool(np.all(np.isfinite(a)) and np.all(a == np.round(a)))


def _is_diagonal(Q):
    Q = np.asarray(Q, dtype=float)
    return bool(np.all(Q == np.diag(np.diag(Q))))


class _Objective:
    """``f(y) = 1/2 y'Qy + c'y`` with exact evaluation for integral data."""

    def __init__(self, Q, c):
        self.Q = np.asarray(Q, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.integral = _is_integral(self.Q) and _is_integral(self.c)
        if self.integral:
            self.Qi = [[int(v) for v in row] for row in self.Q.tolist()]
            self.ci = [int(v) for v in self.c.tolist()]

    def twice_exact(self, y):
        """``2 f(y)`` as an int (integral data only)."""
        Qi, n = self.Qi, len(y)
        total = 0
        for i in range(n):
            yi = y[i]
            if yi:
                row = Qi[i]
                total += yi * (sum(row[j] * y[j] for j in range(n)) + 2 * self.ci[i])
        return total

    def value(self, y):
        if self.integral:
            return self.twice_exact([int(v) for v in y]) / 2.0
        y = np.asarray(y, dtype=float)
        return float(0.5 * y @ self.Q @ y + self.c @ y)

    def values(self, Y):
        Y = np.asarray(Y, dtype=float)
        return 0.5 * np.einsum("ij,jk,ik->i", Y, self.Q, Y) + Y @ self.c

    def tie_tolerance(self, f_int):
        return 0.0 if self.integral else TIE_RTOL * (1.0 + abs(f_int))


def _nearest_int(v):
    return math.floor(v + 0.5)


def certified_box(Q, c, u=None, Qinv=None, incumbent=None):
    """Integer box containing every integer minimizer of ``1/2 y'Qy + c'y``.

    Any integer minimizer lies in ``1/2 (y-u)'Q(y-u) <= f(v0) - f(u)``
    for any integer ``v0``; the box is the bounding box of that
    ellipsoid, ``|y_i - u_i| <= sqrt(2 df (Q^-1)_ii)``.

    Returns ``(lo, hi, df)`` as integer arrays and the slack ``df``.
    """
    Q = np.asarray(Q, dtype=float)
    c = np.asarray(c, dtype=float)
    if u is None:
        u = -solve_spd(Q, c)
    if Qinv is None:
        Qinv = spd_inverse(Q)
    if incumbent is None:
        incumbent = np.floor(u + 0.5)
    w = incumbent - u
    df = max(0.0, 0.5 * float(w @ Q @ w))
    # pad for rounding so boundary minimizers are never cut off
    df_pad = df * (1 + 1e-9) + 1e-12
    half = np.sqrt(2.0 * df_pad * np.diag(Qinv))
    lo = np.ceil(u - half - 1e-9).astype(np.int64)
    hi = np.floor(u + half + 1e-9).astype(np.int64)
    return lo, hi, df


def ellipsoid_lattice_estimate(R, g):
    """Volume of ``{w : |R w|^2 <= g}``, a proxy for its lattice-point count."""
    n = R.shape[0]
    log_vol = (0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1)
               + 0.5 * n * math.log(max(g, 1e-300)) - float(np.sum(np.log(np.diag(R)))))
    return math.exp(min(log_vol, 700.0))


def _box_size(lo, hi):
    size = 1
    for a, b in zip(lo.tolist(), hi.tolist()):
        size *= (b - a + 1)
    return size


def _minimizers_box(obj, lo, hi):
    """Exhaust the integer box; return (f_min, list of tied minimizers)."""
    axes = [np.arange(a, b + 1) for a, b in zip(lo.tolist(), hi.tolist())]
    Y = np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(axes), -1).T
    vals = obj.values(Y)
    f_min = float(vals.min())
    if obj.integral:
        # exact pass over the near-minimal points
        near = Y[vals <= f_min + 0.25]
        exact = [obj.twice_exact([int(v) for v in y]) for y in near]
        m = min(exact)
        ties = [tuple(int(v) for v in y) for y, e in zip(near, exact) if e == m]
        return m / 2.0, ties
    tol = obj.tie_tolerance(f_min)
    ties = [tuple(int(v) for v in y) for y in Y[vals <= f_min + tol]]
    return f_min, ties


def _minimizers_tree(obj, u, lo, hi, incumbent):
    """Branch-and-bound over coordinates with exact conditional bounds.

    Coordinates are fixed widest-box first. With ``Q = R'R`` for the
    permuted matrix, fixing the trailing coordinates leaves a residual
    whose continuous minimum is exactly the accumulated partial sum, so
    pruning on it never discards a minimizer (Fincke-Pohst enumeration).
    """
    n = u.size
    widths = (hi - lo).astype(float)
    # stable: widest first, then lower index
    fix_order = sorted(range(n), key=lambda i: (-widths[i], i))
    perm = fix_order[::-1]  # perm[k] = original index at level k
    Qp = obj.Q[np.ix_(perm, perm)]
    R = cholesky(Qp).tolist()
    up = [float(u[p]) for p in perm]
    diag2 = [R[i][i] ** 2 for i in range(n)]
    lo_p = [int(lo[p]) for p in perm]
    hi_p = [int(hi[p]) for p in perm]

    w0 = np.asarray(incumbent, dtype=float) - u
    best = [float(w0 @ obj.Q @ w0)]  # g = 2 (f(y) - f(u))
    if obj.integral:
        def slack():
            return 0.25
    else:
        f_u = float(0.5 * u @ obj.Q @ u + obj.c @ u)
        def slack():
            return 2.0 * TIE_RTOL * (1.0 + abs(f_u + 0.5 * best[0])) + 1e-9 * (1.0 + best[0])
    cands = []
    y = [0] * n
    dev = [0.0] * n  # y - u in permuted coordinates
    nodes = [0]

    def visit(i, partial):
        nodes[0] += 1
        if nodes[0] > TREE_NODE_LIMIT:
            raise SearchRegionOverflow(f"search tree exceeded {TREE_NODE_LIMIT} nodes")
        row = R[i]
        s = 0.0
        for j in range(i + 1, n):
            s += row[j] * dev[j]
        center = up[i] - s / row[i]
        d2 = diag2[i]
        a, b = lo_p[i], hi_p[i]
        k_up = _nearest_int(center)
        k_dn = k_up - 1
        while True:
            lim = best[0] + slack() - partial
            cu = (k_up - center) ** 2 * d2 if k_up <= b else math.inf
            cd = (k_dn - center) ** 2 * d2 if k_dn >= a else math.inf
            if cu <= cd:
                k, cost = k_up, cu
                k_up += 1
            else:
                k, cost = k_dn, cd
                k_dn -= 1
            if cost > lim:
                return
            y[i] = k
            dev[i] = k - up[i]
            g = partial + cost
            if i == 0:
                if g < best[0]:
                    best[0] = g
                cands.append((g, tuple(y)))
            else:
                visit(i - 1, g)

    visit(n - 1, 0.0)
    # map back to original coordinates
    inv = [0] * n
    for k, p in enumerate(perm):
        inv[p] = k
    keep = [tuple(yp[inv[i]] for i in range(n)) for g, yp in cands if g <= best[0] + slack()]
    if not keep:
        keep = [tuple(int(v) for v in incumbent)]
    if obj.integral:
        exact = [obj.twice_exact(list(yv)) for yv in keep]
        m = min(exact)
        return m / 2.0, [yv for yv, e in zip(keep, exact) if e == m]
    vals = [obj.value(yv) for yv in keep]
    f_min = min(vals)
    tol = obj.tie_tolerance(f_min)
    return f_min, [yv for yv, v in zip(keep, vals) if v <= f_min + tol]


def _babai(Q, u):
    """Nearest-plane rounding; a cheap incumbent at least as good as round(u) often."""
    R = cholesky(Q)
    n = u.size
    y = np.zeros(n)
    for i in range(n - 1, -1, -1):
        s = R[i, i + 1:] @ (y[i + 1:] - u[i + 1:])
        y[i] = np.floor(u[i] - s / R[i, i] + 0.5)
    return y


def _integer_minimizers(Q, c):
    """Continuous minimizer, integer minimum, and the full tie set."""
    Q = np.asarray(Q, dtype=float)
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.size
    if n > MAX_INT_DIM:
        raise DimensionTooLarge(f"{n} integer variables > {MAX_INT_DIM}")
    R = cholesky(Q)
    u = -solve_spd(Q, c, R)
    obj = _Objective(Q, c)
    r = np.floor(u + 0.5)
    bz = _babai(Q, u)
    incumbent = bz if obj.value(bz) < obj.value(r) else r
    Qinv = spd_inverse(Q, R)
    lo, hi, _ = certified_box(Q, c, u, Qinv, incumbent)
    size = _box_size(lo, hi)
    if size <= BOX_ENUM_LIMIT:
        f_int, ties = _minimizers_box(obj, lo, hi)
    else:
        w = incumbent - u
        est = ellipsoid_lattice_estimate(R, float(w @ Q @ w))
        if min(size, est) > BOX_OVERFLOW_LIMIT:
            raise SearchRegionOverflow(
                f"certified region holds ~{min(size, est):.3g} lattice points")
        f_int, ties = _minimizers_tree(obj, u, lo, hi, incumbent)
    f_cont = float(0.5 * u @ Q @ u + c @ u)
    return u, f_cont, f_int, ties


def _pick(ties, secondary=None, direction=Direction.MINIMIZE):
    ties = sorted(ties)
    if secondary is None or len(ties) == 1:
        return ties[0]
    sec = np.asarray(secondary, dtype=float)
    scores = [float(sec @ np.asarray(t, dtype=float)) for t in ties]
    target = max(scores) if Direction(direction) is Direction.MAXIMIZE else min(scores)
    tol = 1e-9 * (1.0 + abs(target))
    for t, s in zip(ties, scores):
        if abs(s - target) <= tol:
            return t
    raise AssertionError("unreachable")


def _response(u, f_cont, f_int, v, n_opt):
    v = np.asarray(v, dtype=np.int64)
    return FollowerResponse(
        u=u, v=v, f_cont=min(f_cont, f_int), f_int=f_int,
        distance_l2=float(np.linalg.norm(u - v)), ties=n_opt)


def minimize_iqp(Q, c):
    """Integer minimizer of ``1/2 y'Qy + c'y`` over ``Z^n``.

    Ties are resolved towards the lexicographically smallest vector.
    Diagonal ``Q`` takes the separable rounding path.
    """
    if _is_diagonal(Q):
        return round_diagonal_iqp(Q, c)
    u, f_cont, f_int, ties = _integer_minimizers(Q, c)
    return _response(u, f_cont, f_int, _pick(ties), len(ties))


def minimize_iqp_lex(Q, c, lex):
    """Like :func:`minimize_iqp` but ties go to ``lex.secondary``.

    Among integer minimizers (exact ties for integral data, otherwise
    within ``1e-6 (1 + |f|)``) return the one with the smallest or largest
    ``lex.secondary . y``; remaining ties go lexicographically.
    """
    if _is_diagonal(Q):
        return round_diagonal_iqp(Q, c, lex)
    u, f_cont, f_int, ties = _integer_minimizers(Q, c)
    return _response(u, f_cont, f_int, _pick(ties, lex.secondary, lex.direction), len(ties))


def diagonal_candidates(Q, c):
    """Per-coordinate rounding candidates for diagonal ``Q``.

    Returns ``(u, candidates)`` where ``candidates[i]`` holds one value,
    or both neighbours when ``u_i`` sits exactly between two integers.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    c = np.atleast_1d(np.asarray(c, dtype=float))
    if not _is_diagonal(Q):
        raise NotDiagonal("Q has non-zero off-diagonal entries")
    q = np.diag(Q)
    if np.any(q <= 0):
        from .errors import NotPositiveDefinite
        raise NotPositiveDefinite("diagonal entries must be positive")
    u = -c / q
    integral = _is_integral(q) and _is_integral(c)
    cands = []
    for qi, ci, ui in zip(q.tolist(), c.tolist(), u.tolist()):
        lo = math.floor(ui)
        hi = lo + 1
        if integral:
            # compare 2 f_i(y) = q y^2 + 2 c y exactly
            flo = int(qi) * lo * lo + 2 * int(ci) * lo
            fhi = int(qi) * hi * hi + 2 * int(ci) * hi
            tie = flo == fhi
        else:
            flo = 0.5 * qi * lo * lo + ci * lo
            fhi = 0.5 * qi * hi * hi + ci * hi
            tie = abs(flo - fhi) <= TIE_RTOL * (1.0 + abs(min(flo, fhi)))
        if tie:
            cands.append((lo, hi))
        else:
            cands.append((lo,) if flo < fhi else (hi,))
    return u, cands


def round_diagonal_iqp(Q, c, lex=None):
    """Separable integer minimization for diagonal ``Q`` by rounding ``u``."""
    u, cands = diagonal_candidates(Q, c)
    v = []
    for i, opts in enumerate(cands):
        if len(opts) == 1 or lex is None:
            v.append(opts[0])
            continue
        s = float(lex.secondary[i])
        if s == 0:
            v.append(opts[0])
        elif (s > 0) == (Direction(lex.direction) is Direction.MAXIMIZE):
            v.append(opts[1])
        else:
            v.append(opts[0])
    obj = _Objective(Q, c)
    f_int = obj.value(v)
    f_cont = float(0.5 * u @ np.asarray(Q, dtype=float) @ u + np.asarray(c, dtype=float) @ u)
    n_opt = 1
    for opts in cands:
        n_opt *= len(opts)
    return _response(u, f_cont, f_int, v, n_opt)


def iqp_optimal_set(Q, c):
    """All integer minimizers (the tie set), sorted lexicographically."""
    if _is_diagonal(Q):
        _, cands = diagonal_candidates(Q, c)
        return sorted(product(*cands))
    return sorted(_integer_minimizers(Q, c)[3])


# --------------------------------------------------------------------------
# linear programming


@dataclass
class LPResult:
    y: np.ndarray
    value: float
    iterations: int = 0


def _pivot(T, r, col):
    T[r] /= T[r, col]
    for i in range(T.shape[0]):
        if i != r and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[r]


def _simplex(T, basis, n_cols, tol=LP_TOL, max_iter=50000):
    """Bland's-rule primal simplex on tableau ``T`` (last row = reduced costs).

    Minimizes; columns ``>= n_cols`` are never entered.
    """
    it = 0
    m = T.shape[0] - 1
    while True:
        cost = T[-1, :n_cols]
        entering = next((j for j in range(n_cols) if cost[j] < -tol), None)
        if entering is None:
            return it
        col = T[:m, entering]
        best_ratio, leave = math.inf, None
        for i in range(m):
            if col[i] > tol:
                ratio = T[i, -1] / col[i]
                if (leave is None or ratio < best_ratio - tol
                        or (abs(ratio - best_ratio) <= tol and basis[i] < basis[leave])):
                    best_ratio, leave = ratio, i
        if leave is None:
            raise RuntimeError("LP unbounded despite finite bounds")
        _pivot(T, leave, entering)
        basis[leave] = entering
        it += 1
        if it > max_iter:
            raise RuntimeError("simplex iteration limit")


def solve_lp(c, D, rhs, lo, hi, maximize=False):
    """Optimize ``c.y`` over ``{D y <= rhs, lo <= y <= hi}``.

    Dense two-phase tableau simplex with Bland's rule; bounds must be
    finite. Raises :class:`Infeasible` for an empty polytope.
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.size
    lo = np.broadcast_to(np.asarray(lo, dtype=float), (n,)).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), (n,)).copy()
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        raise ValueError("solve_lp needs finite bounds")
    if np.any(lo > hi + LP_TOL):
        raise Infeasible("lower bound exceeds upper bound")
    D = np.asarray(D, dtype=float).reshape(-1, n)
    rhs = np.asarray(rhs, dtype=float).reshape(-1)
    sign = -1.0 if maximize else 1.0
    # y = lo + z, 0 <= z <= hi - lo
    G = np.vstack([D, np.eye(n)])
    h = np.concatenate([rhs - D @ lo, hi - lo])
    m = G.shape[0]
    neg = h < 0
    n_art = int(neg.sum())
    # columns: z (n), slack (m), artificial (n_art), rhs
    T = np.zeros((m + 1, n + m + n_art + 1))
    T[:m, :n] = G
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = h
    T[:m][neg] *= -1.0
    basis = list(range(n, n + m))
    for k, i in enumerate(np.flatnonzero(neg)):
        T[i, n + m + k] = 1.0
        basis[i] = n + m + k
    it = 0
    if n_art:
        T[-1, n + m:n + m + n_art] = 1.0
        for i in np.flatnonzero(neg):
            T[-1] -= T[i]
        it += _simplex(T, basis, n + m + n_art)
        if -T[-1, -1] > 1e-7 * (1.0 + np.abs(h).max()):
            raise Infeasible("LP relaxation is infeasible")
        # drive degenerate artificials out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                j = next((j for j in range(n + m) if abs(T[i, j]) > LP_TOL), None)
                if j is not None:
                    _pivot(T, i, j)
                    basis[i] = j
        T[:, n + m:n + m + n_art] = 0.0
    T[-1, :] = 0.0
    T[-1, :n] = sign * c
    for i in range(m):
        if basis[i] < n + m and T[-1, basis[i]] != 0.0:
            T[-1] -= T[-1, basis[i]] * T[i]
    it += _simplex(T, basis, n + m)
    z = np.zeros(n + m + n_art)
    for i, j in enumerate(basis):
        z[j] = T[i, -1]
    y = lo + z[:n]
    y = np.minimum(np.maximum(y, lo), hi)
    return LPResult(y=y, value=float(c @ y), iterations=it)


def solve_ilp(c, D, rhs, lo, hi, maximize=False):
    """Integer optimum of ``c.y`` over ``{D y <= rhs, lo <= y <= hi}``.

    Depth-first branch-and-bound on LP relaxations, branching on the
    most fractional coordinate (lowest index on ties), pruning nodes whose
    relaxation cannot beat the incumbent.
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.size
    if n > MAX_INT_DIM:
        raise DimensionTooLarge(f"{n} integer variables > {MAX_INT_DIM}")
    lo = np.ceil(np.broadcast_to(np.asarray(lo, dtype=float), (n,)) - INT_TOL)
    hi = np.floor(np.broadcast_to(np.asarray(hi, dtype=float), (n,)) + INT_TOL)
    sign = -1.0 if maximize else 1.0
    integral_c = _is_integral(c)
    best_y, best_val = None, math.inf  # minimization of sign * c
    stack = [(lo, hi)]
    nodes = 0
    while stack:
        nlo, nhi = stack.pop()
        nodes += 1
        try:
            res = solve_lp(c, D, rhs, nlo, nhi, maximize=maximize)
        except Infeasible:
            continue
        bound = sign * res.value
        if integral_c:
            bound = math.ceil(bound - 1e-7)
        if best_y is not None and bound >= best_val - 1e-9:
            continue
        frac = np.abs(res.y - np.round(res.y))
        if np.all(frac <= INT_TOL):
            y = np.round(res.y)
            val = sign * float(c @ y)
            if val < best_val - 1e-12:
                best_y, best_val = y, val
            continue
        j = int(np.argmax(frac))
        down_hi = nhi.copy()
        down_hi[j] = math.floor(res.y[j])
        up_lo = nlo.copy()
        up_lo[j] = math.ceil(res.y[j])
        # push the branch nearest the LP value last so it is explored first
        if res.y[j] - math.floor(res.y[j]) >= 0.5:
            stack.append((nlo, down_hi))
            stack.append((up_lo, nhi))
        else:
            stack.append((up_lo, nhi))
            stack.append((nlo, down_hi))
    if best_y is None:
        raise Infeasible("no integer point in the follower region")
    return LPResult(y=best_y.astype(np.int64), value=float(c @ best_y), iterations=nodes)


def lattice_points(lo, hi):
    """All integer points of a box as an ``(N, n)`` array."""
    axes = [np.arange(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    return np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(axes), -1).T
