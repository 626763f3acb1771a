"""One-sided Jacobi SVD for small dense matrices.

Plane rotations applied from the right drive the columns of the working
matrix to mutual orthogonality; their norms are then the singular values,
the normalized columns give U, and the accumulated rotations give V.
Tall inputs are first reduced by an unpivoted QR so the rotation sweeps
run on a square triangle (square inputs take the same reduction, which
also speeds convergence); wide inputs go through the transpose.

Used for the diagonal blocks of the rank-revealing factorization, the
test-matrix generators, and as the truncation-error oracle in metrics.
"""

from dataclasses import dataclass

import numpy as np

from .backend import get_kernels
from .errors import ConvergenceError
from .householder import apply_wy_left, qr_unpivoted

# per-pair relative threshold: columns p, q count as orthogonal when
# |<a_p, a_q>| <= tol * ||a_p|| * ||a_q||.  60 sweeps not converging
# signals a bug, not a hard input.
_REL_TOL = 1e-14
_MAX_SWEEPS = 60

_DUMMY = np.zeros((1, 1), order="F")


@dataclass
class SVDResult:
    u: np.ndarray  # m x k orthonormal columns, k = min(m, n)
    d: np.ndarray  # k singular values, non-increasing, >= 0
    v: np.ndarray  # n x k orthonormal columns


def _check(a):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("svd expects a 2-d matrix")
    if not np.isfinite(a).all():
        raise ValueError("svd input has non-finite entries")
    return a


def _rotate(a, accumulate):
    """Run Jacobi sweeps in place; returns the rotation accumulator V."""
    n = a.shape[1]
    v = np.eye(n, order="F") if accumulate else _DUMMY
    sweeps = get_kernels().jacobi_sweeps(a, v, _REL_TOL, _MAX_SWEEPS, accumulate)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi SVD did not converge in {_MAX_SWEEPS} sweeps")
    return v


def _fill_orthonormal(u, cols):
    """Replace the listed zero columns of u with orthonormal completions."""
    m = u.shape[0]
    for j in cols:
        resid = np.eye(m) - u @ u.T
        cand = int(np.argmax(np.einsum("ij,ij->j", resid, resid)))
        x = resid[:, cand].copy()
        x -= u @ (u.T @ x)  # second projection pass for orthogonality
        u[:, j] = x / np.sqrt(np.dot(x, x))


def svd_full(a):
    """Economy SVD: returns SVDResult with U (m x k), d (k), V (n x k)."""
    a = _check(a)
    m, n = a.shape
    if m < n:
        t = svd_full(a.T)
        return SVDResult(t.v, t.d, t.u)
    qr = qr_unpivoted(a)
    work = np.array(qr.r[:n, :], order="F", copy=True)
    v = _rotate(work, True)
    norms = np.sqrt(np.einsum("ij,ij->j", work, work))
    order = np.argsort(-norms, kind="stable")
    d = norms[order]
    u_small = np.zeros((n, n), order="F")
    empty = []
    for j, col in enumerate(order):
        if d[j] > 0.0:
            u_small[:, j] = work[:, col] / d[j]
        else:
            empty.append(j)
    u = apply_wy_left(qr.q, np.vstack([u_small, np.zeros((m - n, n))]))
    if empty:
        _fill_orthonormal(u, empty)
    return SVDResult(u, d, v[:, order])


def svd_values(a):
    """Singular values only, non-increasing; same reduction as svd_full."""
    a = _check(a)
    m, n = a.shape
    if m < n:
        a = a.T
        m, n = n, m
    qr = qr_unpivoted(a)
    work = np.array(qr.r[:n, :], order="F", copy=True)
    _rotate(work, False)
    norms = np.sqrt(np.einsum("ij,ij->j", work, work))
    return np.sort(norms)[::-1].copy()
