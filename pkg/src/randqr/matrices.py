"""Seeded test-matrix generators with known singular values.

Three spectra at matched 1..1e-5 range:

  fast    geometric decay, sigma_i = (1e-5)^((i-1)/(n-1))
  gauss   plain i.i.d. standard normal entries
  sshape  flat head near 1, rapid middle drop, flat tail near 1e-5:
          sigma_k = 10^(-2.5 (1 + tanh(10 (k - n/2) / n)))

fast and sshape are built as U diag(sigma) V^T with independent Haar-like
orthogonal factors (QR of a Gaussian draw, R-diagonal signs corrected),
so their singular values are known exactly; gauss gets its reference
values from the Jacobi SVD.
"""

from dataclasses import dataclass

import numpy as np

from .householder import apply_wy_left, qr_unpivoted
from .rng import RngState, gaussian_matrix
from .svd import svd_values

KINDS = ("fast", "gauss", "sshape")


@dataclass
class MatrixSpec:
    kind: str
    n: int
    seed: int


def haar_orthonormal(n, rng):
    """Orthogonal n x n matrix distributed uniformly (Haar) over the group."""
    g = gaussian_matrix(n, n, rng)
    res = qr_unpivoted(g)
    q = apply_wy_left(res.q, np.eye(n, order="F"))
    # without the sign correction QR's sign convention biases the distribution
    signs = np.where(np.diag(res.r) >= 0.0, 1.0, -1.0)
    return q * signs


def _sigma(kind, n):
    if kind == "fast":
        return (1e-5) ** (np.arange(n) / (n - 1))
    k = np.arange(1, n + 1)
    return 10.0 ** (-2.5 * (1.0 + np.tanh(10.0 * (k - n / 2) / n)))


def gen_matrix(spec, rng=None):
    """Build the matrix for `spec`; returns (A, true_singular_values).

    The stream defaults to RngState(spec.seed); passing `rng` explicitly
    continues that stream instead.  U is drawn before V.
    """
    if spec.kind not in KINDS:
        raise ValueError(f"unknown matrix kind {spec.kind!r}")
    if spec.n < 2:
        raise ValueError(f"matrix size must be at least 2, got {spec.n}")
    if rng is None:
        rng = RngState(spec.seed)
    n = spec.n
    if spec.kind == "gauss":
        a = gaussian_matrix(n, n, rng)
        return a, svd_values(a)
    d = _sigma(spec.kind, n)
    u = haar_orthonormal(n, rng)
    v = haar_orthonormal(n, rng)
    a = np.asfortranarray((u * d) @ v.T)
    return a, d.copy()
