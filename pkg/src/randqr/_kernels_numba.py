"""Numba-jitted kernels: the fast backend.

Loop structure mirrors _kernels_numpy exactly; see that module for the
contracts.  Compiled lazily on first call, cached on disk afterwards.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def householder_sweep(a, v, perm, steps, pivot):
    m, n = a.shape
    for j in range(steps):
        if pivot:
            best = j
            best_sq = 0.0
            for c in range(j, n):
                sq = 0.0
                for i in range(j, m):
                    sq += a[i, c] * a[i, c]
                if sq > best_sq:  # strict: ties keep the lowest index
                    best_sq = sq
                    best = c
            if best != j:
                for i in range(m):
                    tmp = a[i, j]
                    a[i, j] = a[i, best]
                    a[i, best] = tmp
                pt = perm[j]
                perm[j] = perm[best]
                perm[best] = pt
        if m - j < 2:
            continue
        normsq = 0.0
        for i in range(j, m):
            normsq += a[i, j] * a[i, j]
        if normsq == 0.0:
            continue
        norm = math.sqrt(normsq)
        beta = -norm if a[j, j] >= 0.0 else norm
        usq = 0.0
        for i in range(j, m):
            ui = beta - a[i, j] if i == j else -a[i, j]
            v[i, j] = ui
            usq += ui * ui
        uinv = 1.0 / math.sqrt(usq)
        for i in range(j, m):
            v[i, j] *= uinv
        for c in range(j + 1, n):
            s = 0.0
            for i in range(j, m):
                s += v[i, j] * a[i, c]
            s *= 2.0
            for i in range(j, m):
                a[i, c] -= s * v[i, j]
        a[j, j] = beta
        for i in range(j + 1, m):
            a[i, j] = 0.0


@njit(cache=True, fastmath=True)
def jacobi_sweeps(a, v, rel_tol, max_sweeps, accumulate):
    m, n = a.shape
    sq = np.zeros(n)
    for sweep in range(max_sweeps):
        for c in range(n):
            acc = 0.0
            for i in range(m):
                acc += a[i, c] * a[i, c]
            sq[c] = acc
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = sq[p]
                aqq = sq[q]
                if app == 0.0 or aqq == 0.0:
                    continue
                apq = 0.0
                for i in range(m):
                    apq += a[i, p] * a[i, q]
                if abs(apq) <= rel_tol * math.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c_ = 1.0 / math.sqrt(1.0 + t * t)
                s_ = t * c_
                for i in range(m):
                    ap = a[i, p]
                    a[i, p] = c_ * ap - s_ * a[i, q]
                    a[i, q] = s_ * ap + c_ * a[i, q]
                if accumulate:
                    for i in range(v.shape[0]):
                        vp = v[i, p]
                        v[i, p] = c_ * vp - s_ * v[i, q]
                        v[i, q] = s_ * vp + c_ * v[i, q]
                sq[p] = app - t * apq
                sq[q] = aqq + t * apq
                rotated = True
        if not rotated:
            return sweep + 1
    return -1
