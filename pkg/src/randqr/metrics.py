"""Truncation-error curves and diagonal-vs-singular-value diagnostics.

The error of a rank-k truncation A_k = Q(:,1:k) R(1:k,:) P^T is measured
by dense expansion at desk scale, in both spectral and Frobenius norms;
the optimal curve it is compared against comes from the closed forms
sigma_{k+1} and sqrt(sum_{j>k} sigma_j^2).
"""

from dataclasses import dataclass

import numpy as np

from .core import frobenius_norm, spectral_norm


@dataclass
class ErrorCurve:
    ks: list
    spectral: list
    frobenius: list
    label: str = ""


@dataclass
class DiagComparison:
    r_abs: np.ndarray  # |R(k,k)|, k = 1..n
    sigma: np.ndarray  # sigma_k, same indexing


def default_ks(n, b):
    """Ranks reported by the experiments: 0, b, 2b, ..., and n."""
    ks = list(range(0, n, b))
    ks.append(n)
    return ks


def truncation_errors(a, f, ks):
    """Error curve e_k = ||A - Q(:,1:k) R(1:k,:) P^T|| at each requested rank."""
    a = np.asarray(a, dtype=np.float64)
    n = f.n
    if any(k < 0 or k > n for k in ks):
        raise ValueError(f"ranks must lie in [0, {n}]")
    q = f.expand_q()
    p = f.expand_p()
    rp = f.r[:n, :] @ p.T
    spectral = []
    frobenius = []
    for k in ks:
        resid = (a - q[:, :k] @ rp[:k, :]) if k > 0 else a
        spectral.append(spectral_norm(resid))
        frobenius.append(frobenius_norm(resid))
    return ErrorCurve(list(ks), spectral, frobenius, f.method)


def svd_error_curve(sigma, ks):
    """Closed-form optimal truncation errors for the given singular values."""
    sigma = np.asarray(sigma, dtype=np.float64)
    n = len(sigma)
    tail = np.concatenate([np.sqrt(np.cumsum(sigma[::-1] ** 2))[::-1], [0.0]])
    spectral = [float(sigma[k]) if k < n else 0.0 for k in ks]
    frobenius = [float(tail[k]) for k in ks]
    return ErrorCurve(list(ks), spectral, frobenius, "svd_optimal")


def diag_comparison(f, sigma):
    """Pair |R(k,k)| with sigma_k for k = 1..n."""
    sigma = np.asarray(sigma, dtype=np.float64)
    r_abs = np.abs(np.diag(f.r))[: len(sigma)]
    return DiagComparison(r_abs.copy(), sigma.copy())
