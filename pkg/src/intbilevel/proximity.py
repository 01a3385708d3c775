"""Proximity bounds between continuous and integer minimizers.

Quadratic case: distance between the unique continuous minimizer of
``1/2 y'Qy + d'y`` and any integer minimizer. Linear case: Cook et al.
(l-infinity, via the largest subdeterminant) and Eisenbrand-Weismantel
(l-1, via the largest entry) bounds for integer programs.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import SearchRegionOverflow, ZeroVector
from .linalg import cholesky, eigen_extremes, solve_lower, solve_spd, spd_inverse
from .oracles import _Objective, _box_size, certified_box, lattice_points

BRUTE_FORCE_MAX_DIM = 3
BRUTE_FORCE_MAX_POINTS = 10 ** 5


@dataclass(frozen=True)
class ProximityBounds:
    flatness: float
    lambda_max: float
    lambda_min: float
    prox_l2: float
    source: str  # quad_general | quad_diagonal | cook_l_inf | ew_l1


def flatness_bound(n):
    """Upper bound ``n**2.5`` on the flatness constant in dimension ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(n) ** 2.5


def flatness_reis_rothvoss(n):
    """``n log^3(2n)``: growth rate only, constant unknown; never a certificate."""
    return n * math.log(2 * n) ** 3


def prox_bound_quad(Q):
    """``flatness_bound(n) / 4 * sqrt(lambda_max / lambda_min)``."""
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    cholesky(Q)  # raises NotPositiveDefinite
    lmax, lmin = eigen_extremes(Q)
    return flatness_bound(Q.shape[0]) / 4.0 * math.sqrt(lmax / lmin)


def prox_diagonal(n):
    """Exact l2 proximity ``sqrt(n)/2`` of any diagonal positive definite matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.sqrt(n) / 2.0


def proximity_bounds(Q):
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    n = Q.shape[0]
    lmax, lmin = eigen_extremes(Q)
    if np.all(Q == np.diag(np.diag(Q))):
        cholesky(Q)
        return ProximityBounds(flatness_bound(n), lmax, lmin, prox_diagonal(n), "quad_diagonal")
    return ProximityBounds(flatness_bound(n), lmax, lmin, prox_bound_quad(Q), "quad_general")


def _dual_norm(Q, p, R=None):
    """``||R^{-T} p||_2`` with ``Q = R'R``."""
    R = cholesky(Q) if R is None else R
    return float(np.linalg.norm(solve_lower(R.T, np.asarray(p, dtype=float))))


def ellipsoid_linear_max(Q, p, gamma):
    """``max { p.x : x'Qx <= gamma }``.

    Evaluated as ``sqrt(gamma) / ||R^{-T} p|| * p'Q^{-1}p``; equals
    ``sqrt(gamma * p'Q^{-1}p)``.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    R = cholesky(Q)
    nrm = _dual_norm(Q, p, R)
    if nrm == 0.0:
        return 0.0
    return math.sqrt(gamma) / nrm * float(p @ solve_spd(Q, p, R))


def prox_linear_term_bound(Q, p):
    """Bound on ``p.(u - v)`` over continuous/integer minimizer pairs.

    ``flatness_bound(n) sqrt(lambda_max) / (4 sqrt 2 ||R^{-T}p||) p'Q^{-1}p``
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if not np.any(p):
        raise ZeroVector("p must be non-zero")
    R = cholesky(Q)
    lmax, _ = eigen_extremes(Q)
    n = Q.shape[0]
    return (flatness_bound(n) * math.sqrt(lmax) / (4.0 * math.sqrt(2.0) * _dual_norm(Q, p, R))
            * float(p @ solve_spd(Q, p, R)))


def cook_prox_bound(n, Delta):
    """l-infinity proximity ``n * Delta`` for integer programs."""
    if n < 1 or Delta < 0:
        raise ValueError("need n >= 1 and Delta >= 0")
    return float(n * Delta)


def ew_prox_bound(m, delta):
    """l-1 proximity ``m (2 m delta + 1)^m`` for ``m``-row integer programs."""
    if m < 1 or delta < 0:
        raise ValueError("need m >= 1 and delta >= 0")
    return float(m * (2 * m * delta + 1) ** m)


def integer_minimizers_bruteforce(Q, d):
    """Every integer minimizer of ``1/2 y'Qy + d'y`` by exhausting the certified box.

    Returns ``(u, minimizers)``; small dimensions only.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    d = np.atleast_1d(np.asarray(d, dtype=float))
    n = d.size
    if n > BRUTE_FORCE_MAX_DIM:
        raise ValueError(f"brute force supports n <= {BRUTE_FORCE_MAX_DIM}")
    u = -solve_spd(Q, d)
    lo, hi, _ = certified_box(Q, d, u, spd_inverse(Q))
    if _box_size(lo, hi) > BRUTE_FORCE_MAX_POINTS:
        raise SearchRegionOverflow("certified box too large for brute force")
    Y = lattice_points(lo, hi)
    obj = _Objective(Q, d)
    if obj.integral:
        twice = np.array([obj.twice_exact([int(v) for v in y]) for y in Y])
        best = Y[twice == twice.min()]
    else:
        vals = obj.values(Y)
        fmin = float(vals.min())
        best = Y[vals <= fmin + 1e-9 * (1.0 + abs(fmin))]
    return u, best


def measure_prox_bruteforce(Q, d, box_radius=None):
    """Largest ``||u - v||_2`` over integer minimizers ``v`` for the linear term ``d``.

    ``box_radius`` optionally widens the search to at least that many
    lattice steps around ``u``; the certified region is always covered.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    d = np.atleast_1d(np.asarray(d, dtype=float))
    u, best = integer_minimizers_bruteforce(Q, d)
    if box_radius:
        lo = np.floor(u).astype(int) - int(box_radius)
        hi = np.ceil(u).astype(int) + int(box_radius)
        if _box_size(lo, hi) > BRUTE_FORCE_MAX_POINTS:
            raise SearchRegionOverflow("requested box too large")
        Y = lattice_points(lo, hi)
        obj = _Objective(Q, d)
        vals = obj.values(Y)
        fbest = obj.value(best[0])
        extra = Y[vals <= fbest + 1e-9 * (1.0 + abs(fbest))]
        best = np.unique(np.vstack([best, extra]), axis=0)
    return float(np.max(np.linalg.norm(best - u, axis=1)))
