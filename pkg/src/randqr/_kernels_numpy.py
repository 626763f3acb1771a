"""Pure-numpy kernels: the fallback backend.

Semantically identical to the numba twins (same loop order, same pivot
tie-breaks, same rotation formulas); inner reductions are vectorized, so
floating-point results agree with the numba path only to rounding error.
"""

import numpy as np


def householder_sweep(a, v, perm, steps, pivot):
    """Run `steps` Householder eliminations on `a` in place.

    a      (m, n) working matrix, overwritten with the triangular factor
           and the updated trailing block.
    v      (m, steps) zero on entry; column j receives the unit reflector
           vector of step j (all zeros marks an identity reflector).
    perm   (n,) int64 identity on entry; updated to the column order when
           pivoting, left alone otherwise.
    pivot  when true, step j first swaps in the trailing column of largest
           partial norm (norms recomputed from scratch; ties -> lowest index).
    """
    m, n = a.shape
    for j in range(steps):
        if pivot:
            sub = a[j:, j:]
            normsq = np.einsum("ij,ij->j", sub, sub)
            best = j + int(np.argmax(normsq))  # argmax takes the first maximum
            if best != j:
                a[:, [j, best]] = a[:, [best, j]]
                perm[[j, best]] = perm[[best, j]]
        if m - j < 2:
            continue
        x = a[j:, j]
        norm = np.sqrt(np.dot(x, x))
        if norm == 0.0:
            continue
        beta = -norm if x[0] >= 0.0 else norm
        u = -x.copy()
        u[0] += beta
        u /= np.sqrt(np.dot(u, u))
        v[j:, j] = u
        tail = a[j:, j + 1 :]
        tail -= np.outer(u, 2.0 * (u @ tail))
        a[j, j] = beta
        a[j + 1 :, j] = 0.0


def jacobi_sweeps(a, v, rel_tol, max_sweeps, accumulate):
    """One-sided Jacobi: orthogonalize the columns of `a` by plane rotations.

    Rotations are accumulated into `v` (identity on entry) when `accumulate`
    is true, so on exit a_in = a_out @ v.T with a_out's columns mutually
    orthogonal; values-only callers pass accumulate=False and a dummy v.
    Returns the number of sweeps used (the last one applies no rotation),
    or -1 if max_sweeps was exhausted.
    """
    m, n = a.shape
    for sweep in range(max_sweeps):
        sq = np.einsum("ij,ij->j", a, a)
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = sq[p]
                aqq = sq[q]
                if app == 0.0 or aqq == 0.0:
                    continue
                apq = np.dot(a[:, p], a[:, q])
                if abs(apq) <= rel_tol * np.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s, c]])
                a[:, [p, q]] = a[:, [p, q]] @ g
                if accumulate:
                    v[:, [p, q]] = v[:, [p, q]] @ g
                sq[p] = app - t * apq
                sq[q] = aqq + t * apq
                rotated = True
        if not rotated:
            return sweep + 1
    return -1
