"""Householder reflectors, compact-WY products, and QR sweeps.

A reflector H = I - 2 v v^T is stored by its unit vector v plus the row
offset where it starts acting.  Products of reflectors are kept in the
compact form U = I + W Y (W is n x b, Y is b x n), which applies to a
matrix with two small matmuls instead of a dense n x n product.  The
factorizations below never expand U densely; `wy_to_dense` exists for
tests and metrics and counts its uses so that can be asserted.
"""

from dataclasses import dataclass, field

import numpy as np

from .backend import get_kernels
from .errors import DimensionError

# bumped by every dense expansion of an orthogonal factor; factorization
# code paths must leave it untouched (asserted in tests)
dense_expansions = 0


@dataclass
class Reflector:
    """Unit vector of H = I - 2 v v^T, acting on rows offset..offset+len(v)."""

    v: np.ndarray
    offset: int = 0

    @property
    def is_identity(self):
        return not np.any(self.v)


@dataclass
class WYFactor:
    """Compact representation U = I + W Y of a product of reflectors."""

    w: np.ndarray  # n x b
    y: np.ndarray  # b x n

    @property
    def dim(self):
        return self.w.shape[0]

    @property
    def count(self):
        return self.w.shape[1]

    @classmethod
    def identity(cls, n):
        return cls(np.zeros((n, 0)), np.zeros((0, n)))


def reflector_from_vector(a):
    """Reflector sending a to beta*e1, with beta = -sign(a1)*||a|| (sign(0) := +1).

    Returns (Reflector, beta).  A zero vector yields the identity reflector
    (v = 0) and beta = 0 by convention.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    norm = np.sqrt(np.dot(a, a))
    if norm == 0.0:
        return Reflector(np.zeros(a.shape[0])), 0.0
    beta = -norm if a[0] >= 0.0 else norm
    u = -a  # fresh array; beta*e1 - a
    u[0] += beta
    u /= np.sqrt(np.dot(u, u))
    return Reflector(u), float(beta)


def apply_reflector(h, a):
    """H @ A for a single reflector, respecting its row offset."""
    a = np.array(a, dtype=np.float64, order="F", copy=True, ndmin=2)
    if h.is_identity:
        return a
    k = h.offset
    block = a[k : k + h.v.shape[0], :]
    block -= np.outer(2.0 * h.v, h.v @ block)
    return a


def _embed(refl, n):
    if refl.offset + refl.v.shape[0] > n:
        raise DimensionError("reflector extends past dimension")
    v = np.zeros(n)
    v[refl.offset : refl.offset + refl.v.shape[0]] = refl.v
    return v


def wy_accumulate(reflectors, n):
    """Fold an ordered list of reflectors into U = H1 H2 ... Hb = I + W Y."""
    live = [r for r in reflectors if not r.is_identity]
    b = len(live)
    w = np.zeros((n, b), order="F")
    y = np.zeros((b, n), order="F")
    for j, refl in enumerate(live):
        v = _embed(refl, n)
        # U_new = U (I - 2 v v^T) = I + [W | -2(v + W(Yv))] [Y ; v^T]
        w[:, j] = -2.0 * (v + w[:, :j] @ (y[:j, :] @ v))
        y[j, :] = v
    return WYFactor(w, y)


def apply_wy_left(u, a, transposed=False):
    """U @ A, or U^T @ A when transposed; A is not modified."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[0] != u.dim:
        raise DimensionError(f"U is {u.dim}-dim, A has {a.shape[0]} rows")
    if u.count == 0:
        return np.array(a, order="F", copy=True)
    if transposed:
        return a + u.y.T @ (u.w.T @ a)
    return a + u.w @ (u.y @ a)


def apply_wy_right(a, u):
    """A @ U; A is not modified."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[1] != u.dim:
        raise DimensionError(f"U is {u.dim}-dim, A has {a.shape[1]} columns")
    if u.count == 0:
        return np.array(a, order="F", copy=True)
    return a + (a @ u.w) @ u.y


def wy_to_dense(u):
    """Dense n x n expansion of U. Test/metrics helper, never used to factorize."""
    global dense_expansions
    dense_expansions += 1
    return np.eye(u.dim, order="F") + u.w @ u.y


@dataclass
class QRResult:
    q: WYFactor
    r: np.ndarray
    perm: np.ndarray | None = None
    reflectors: list = field(default_factory=list)


def _sweep(a, steps, pivot):
    a = np.array(a, dtype=np.float64, order="F", copy=True)
    m, n = a.shape
    v = np.zeros((m, steps), order="F")
    perm = np.arange(n, dtype=np.int64)
    get_kernels().householder_sweep(a, v, perm, steps, pivot)
    refl = [Reflector(v[j:, j].copy(), j) for j in range(steps)]
    return a, refl, perm


def qr_unpivoted(a):
    """Householder QR without pivoting; requires rows >= cols."""
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    if m < n:
        raise DimensionError(f"qr_unpivoted needs rows >= cols, got {m}x{n}")
    # on a square input the last step's subcolumn has length 1 and the kernel
    # leaves it alone, so the final diagonal sign stays unnormalized
    r, refl, _ = _sweep(a, n, False)
    return QRResult(wy_accumulate(refl, m), r, None, refl)


def qr_column_pivoted(a, steps=None):
    """Greedy column-pivoted QR; runs exactly `steps` pivot/reflect iterations.

    Each step swaps in the trailing column of largest norm (recomputed from
    scratch, ties to the lowest index), then eliminates below the diagonal.
    With steps < cols this is the partial factorization used for pivot
    selection: R's first `steps` rows are final and the trailing block has
    been updated by the accumulated Q^T.
    """
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    if steps is None:
        steps = min(m, n)
    if not 1 <= steps <= min(m, n):
        raise ValueError(f"steps must lie in [1, {min(m, n)}], got {steps}")
    r, refl, perm = _sweep(a, steps, True)
    return QRResult(wy_accumulate(refl, m), r, perm, refl)


def qr_tall_pivoted(a):
    """Pivoted QR of a tall panel via the two-stage scheme.

    An unpivoted sweep reduces the m x b panel to triangular form, then a
    b x b pivoted sweep on the triangle supplies the pivot order; the two
    Q factors compose.  Cheaper than pivoting at full height and gives the
    same diagonal magnitudes.
    """
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    first = qr_unpivoted(a)
    small = qr_column_pivoted(first.r[:n, :])
    r = np.zeros((m, n), order="F")
    r[:n, :] = small.r
    refl = first.reflectors + small.reflectors  # offsets already agree
    return QRResult(wy_accumulate(refl, m), r, small.perm, refl)
