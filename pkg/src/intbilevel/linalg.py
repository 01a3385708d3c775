"""Small dense linear algebra kernels.

Everything here works on ``numpy`` arrays and is meant for the modest
sizes that occur in the bilevel instances (tens of rows at most).
The factorizations are written out explicitly so their tolerances are
under our control rather than LAPACK's.
"""
from itertools import combinations

import numpy as np

from .errors import DimensionTooLarge, NoConvergence, NotPositiveDefinite

SYM_RTOL = 1e-9
PIVOT_RTOL = 1e-12
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
SUBDET_MAX_DIM = 8


def _as_square(Q):
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {Q.shape}")
    if not np.all(np.isfinite(Q)):
        raise ValueError("matrix has non-finite entries")
    return Q


def is_symmetric(Q, rtol=SYM_RTOL):
    Q = np.asarray(Q, dtype=float)
    scale = max(1.0, float(np.max(np.abs(Q)))) if Q.size else 1.0
    return bool(np.all(np.abs(Q - Q.T) <= rtol * scale))


def cholesky(Q):
    """Upper-triangular ``R`` with ``Q = R.T @ R``.

    Raises
    ------
    NotPositiveDefinite
        If ``Q`` is not symmetric or some pivot falls below
        ``1e-12 * trace(Q) / n``.
    """
    Q = _as_square(Q)
    if not is_symmetric(Q):
        raise NotPositiveDefinite("matrix is not symmetric")
    n = Q.shape[0]
    trace = float(np.trace(Q))
    floor = PIVOT_RTOL * trace / n if n else 0.0
    if n and trace <= 0:
        raise NotPositiveDefinite("non-positive trace")
    R = np.zeros_like(Q)
    for j in range(n):
        pivot = Q[j, j] - R[:j, j] @ R[:j, j]
        if not pivot > floor:
            raise NotPositiveDefinite(f"pivot {pivot:.3e} at index {j}")
        R[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            R[j, j + 1:] = (Q[j, j + 1:] - R[:j, j] @ R[:j, j + 1:]) / R[j, j]
    return R


def solve_upper(R, b):
    n = R.shape[0]
    x = np.array(b, dtype=float, copy=True)
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - R[i, i + 1:] @ x[i + 1:]) / R[i, i]
    return x


def solve_lower(L, b):
    n = L.shape[0]
    x = np.array(b, dtype=float, copy=True)
    for i in range(n):
        x[i] = (x[i] - L[i, :i] @ x[:i]) / L[i, i]
    return x


def solve_spd(Q, c, R=None):
    """Solve ``Q x = c`` for symmetric positive definite ``Q``.

    A precomputed factor ``R`` (from :func:`cholesky`) may be passed to
    skip the factorization. ``c`` may be a vector or a matrix of
    right-hand sides.
    """
    if R is None:
        R = cholesky(Q)
    c = np.asarray(c, dtype=float)
    if c.ndim == 2:
        return np.column_stack([solve_spd(Q, col, R) for col in c.T])
    return solve_upper(R, solve_lower(R.T, c))


def spd_inverse(Q, R=None):
    Q = _as_square(Q)
    return solve_spd(Q, np.eye(Q.shape[0]), R)


def _off_norm(A):
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def jacobi_eigenvalues(Q, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations."""
    A = _as_square(Q).copy()
    if not is_symmetric(A):
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = _off_norm(A)
        if off <= tol * scale:
            return np.diag(A).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                if abs(apq) <= 1e-18 * (abs(A[p, p]) + abs(A[q, q])):
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/cols p and q
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
    off = _off_norm(A)
    if off <= tol * scale:
        return np.diag(A).copy()
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")


def eigen_extremes(Q):
    """``(lambda_max, lambda_min)`` of a symmetric matrix."""
    w = jacobi_eigenvalues(Q)
    return float(np.max(w)), float(np.min(w))


def haar_orthogonal(n, seed):
    """Haar-distributed random orthogonal ``n x n`` matrix.

    QR of a Gaussian matrix with the columns of ``Q`` rescaled by the
    signs of ``diag(R)`` (Mezzadri's correction). ``seed`` may be an int
    or a ``numpy.random.Generator``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Z = rng.standard_normal((n, n))
    Qf, Rf = np.linalg.qr(Z)
    signs = np.sign(np.diag(Rf))
    signs[signs == 0] = 1.0
    return Qf * signs


def _det_bareiss(M):
    """Exact determinant of a square list-of-lists of Python ints."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def max_abs_subdeterminant(D):
    """Largest ``|det|`` over all square submatrices of an integer matrix.

    Exact (integer arithmetic, fraction-free elimination). Refuses
    matrices whose smaller side exceeds 8.
    """
    D = np.asarray(D)
    if D.ndim != 2:
        raise ValueError("expected a matrix")
    if D.size and not np.all(np.asarray(D, dtype=float) == np.round(np.asarray(D, dtype=float))):
        raise ValueError("matrix must be integral")
    rows, cols = D.shape
    if min(rows, cols) > SUBDET_MAX_DIM:
        raise DimensionTooLarge(f"min dimension {min(rows, cols)} > {SUBDET_MAX_DIM}")
    M = [[int(v) for v in row] for row in D.tolist()]
    best = 0
    for k in range(1, min(rows, cols) + 1):
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                d = abs(_det_bareiss([[M[r][c] for c in cs] for r in rs]))
                if d > best:
                    best = d
    return best


def max_abs_entry(D):
    D = np.asarray(D)
    return int(np.max(np.abs(D))) if D.size else 0
