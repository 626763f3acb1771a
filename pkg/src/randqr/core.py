"""Dense matrix plumbing: products, norms, and a plain-text matrix format.

Everything here is double precision and column-major by convention; the
blocked factorizations slice matrices by column panels, so generators and
loaders hand back Fortran-ordered arrays.
"""

import numpy as np

from .errors import DimensionError


def matmul(a, b):
    """C = A @ B with an explicit inner-dimension check."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionError("matmul expects 2-d operands")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"inner dimensions differ: {a.shape} vs {b.shape}")
    return a @ b


def transpose(a):
    return np.asarray(a, dtype=np.float64).T


def column_norms(a):
    """Euclidean norm of each column, as a 1-d array."""
    a = np.asarray(a, dtype=np.float64)
    return np.sqrt(np.sum(a * a, axis=0))


def frobenius_norm(a):
    a = np.asarray(a, dtype=np.float64)
    return float(np.sqrt(np.sum(a * a)))


def spectral_norm(a):
    """Largest singular value, via the in-package Jacobi SVD (not an estimate)."""
    from .svd import svd_values

    a = np.asarray(a, dtype=np.float64)
    if not np.any(a):
        return 0.0
    return float(svd_values(a)[0])


def save_matrix(path, a):
    """Write `rows cols` then one space-separated row per line, 17 significant digits."""
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    with open(path, "w") as fh:
        fh.write(f"{a.shape[0]} {a.shape[1]}\n")
        for row in a:
            fh.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def load_matrix(path):
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise DimensionError(f"bad matrix header in {path!r}")
        rows, cols = int(header[0]), int(header[1])
        out = np.empty((rows, cols), dtype=np.float64, order="F")
        for i in range(rows):
            vals = fh.readline().split()
            if len(vals) != cols:
                raise DimensionError(f"row {i} of {path!r} has {len(vals)} entries, expected {cols}")
            out[i, :] = [float(v) for v in vals]
    return out
