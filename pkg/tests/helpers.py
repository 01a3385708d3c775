"""Independent brute-force references used across the test modules."""
import itertools

import numpy as np


def lattice_box(center, radius):
    axes = [range(int(np.floor(c)) - radius, int(np.ceil(c)) + radius + 1) for c in center]
    return np.array(list(itertools.product(*axes)), dtype=float)


def iqp_bruteforce(Q, c, radius=None):
    """All integer minimizers of 1/2 y'Qy + c'y by scanning a generous box around u.

    The box radius comes from ||y - u||_inf <= ||y - u||_2 <= sqrt(2 df / lambda_min),
    with df taken at round(u); it uses numpy's own solvers so it shares no code
    with the package.
    """
    Q = np.asarray(Q, dtype=float)
    c = np.asarray(c, dtype=float)
    u = np.linalg.solve(Q, -c)
    f = lambda Y: 0.5 * np.einsum("ij,jk,ik->i", Y, Q, Y) + Y @ c
    if radius is None:
        r0 = np.round(u)
        df = float(f(r0[None])[0] - f(u[None])[0])
        lam = np.linalg.eigvalsh(Q)[0]
        radius = int(np.ceil(np.sqrt(2 * max(df, 0) / lam))) + 1
    Y = lattice_box(u, radius)
    vals = f(Y)
    fmin = vals.min()
    return u, fmin, Y[vals <= fmin + 1e-9 * (1 + abs(fmin))]


def random_spd(rng, n, integral=False):
    if integral:
        R = rng.integers(-2, 3, (n, n))
        return (R.T @ R + np.eye(n, dtype=int)).astype(float)
    M = rng.standard_normal((n, n))
    return M.T @ M + 0.3 * np.eye(n)


def ilp_bruteforce(c, D, rhs, lo, hi, maximize=False):
    axes = [range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    Y = np.array(list(itertools.product(*axes)), dtype=float)
    ok = np.all(Y @ np.asarray(D, dtype=float).T <= np.asarray(rhs, dtype=float) + 1e-9, axis=1)
    Y = Y[ok]
    if not len(Y):
        return None, []
    v = Y @ np.asarray(c, dtype=float)
    best = v.max() if maximize else v.min()
    return best, Y[np.abs(v - best) <= 1e-9]


ACCEPTANCE_LINES = []


def report(num, ok, detail):
    """Record (and print) one PASS/FAIL line for an acceptance criterion."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
