"""Randomized selection of a block of column pivots.

A Gaussian sketch of the trailing block concentrates its dominant row
space into a thin matrix Y; a cheap factorization of Y then picks b
pivots at once, either as a column permutation (classical flavor) or as
a product of b Householder reflectors (orthonormal pivot transform).
Power iteration sharpens the sketch toward the leading singular vectors;
over-sampled columns widen the sketch but only b pivots are kept.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .householder import (
    WYFactor,
    _sweep,
    apply_wy_left,
    apply_wy_right,
    qr_column_pivoted,
    qr_unpivoted,
    wy_accumulate,
    wy_to_dense,
)


@dataclass
class SketchConfig:
    """Sketch shape: width block+oversample, power iterations, stabilization.

    orthonormalize_between_powers defaults to None, meaning on for power >= 2
    and off otherwise: with q = 0 the sketch is the plain product (so small
    cases can be checked bitwise against matmul), while repeated powers
    collapse onto the top singular vector in floating point unless the
    columns are re-orthonormalized between applications.
    """

    block: int
    oversample: int = 0
    power: int = 0
    orthonormalize_between_powers: bool | None = None

    @property
    def width(self):
        return self.block + self.oversample

    def stabilized(self):
        if self.orthonormalize_between_powers is None:
            return self.power >= 2
        return self.orthonormalize_between_powers


@dataclass
class PermutationPivot:
    """Column permutation in gather form: applying to A yields A[:, order]."""

    order: np.ndarray

    def apply_right(self, a):
        return np.array(a[:, self.order], order="F")

    def to_dense(self):
        return np.eye(len(self.order), order="F")[:, self.order]


@dataclass
class ReflectorPivot:
    """Orthonormal pivot transform S = H1 ... Hb held in compact WY form."""

    wy: WYFactor

    def apply_right(self, a):
        return apply_wy_right(a, self.wy)

    def to_dense(self):
        return wy_to_dense(self.wy)


def _orth(y):
    """Orthonormal basis for the columns of y, via the unpivoted QR's Q factor."""
    rows, cols = y.shape
    res = qr_unpivoted(y)
    return apply_wy_left(res.q, np.eye(rows, cols, order="F"))


def build_sketch(x, cfg, rng):
    """Y = (X^T X)^q X^T Omega, with Omega Gaussian of width block+oversample.

    With stabilization on, columns are re-orthonormalized after every
    application of X^T or X.
    """
    from .rng import gaussian_matrix

    x = np.asarray(x, dtype=np.float64)
    m, n = x.shape
    if cfg.width > n:
        raise ValueError(f"sketch width {cfg.width} exceeds the {n} columns being pivoted")
    stab = cfg.stabilized()
    omega = gaussian_matrix(m, cfg.width, rng)
    y = x.T @ omega
    if stab:
        y = _orth(y)
    for _ in range(cfg.power):
        z = x @ y
        if stab:
            z = _orth(z)
        y = x.T @ z
        if stab:
            y = _orth(y)
    return y


def select_pivot_permutation(y, b):
    """Choose b columns by a partial pivoted QR of Y^T.

    Returns the permutation placing the chosen columns first (in pivot
    order) and the remaining columns after them in their original order.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    if b > n:
        raise ValueError(f"cannot choose {b} pivots from {n} columns")
    res = qr_column_pivoted(y.T, steps=b)
    chosen = res.perm[:b]
    taken = np.zeros(n, dtype=bool)
    taken[chosen] = True
    order = np.concatenate([chosen, np.flatnonzero(~taken)])
    return PermutationPivot(order.astype(np.int64))


def select_pivot_reflectors(y, b):
    """First b Householder reflectors of the unpivoted QR of Y, as a WYFactor.

    The resulting S rotates all of Y's leading mass into the first b
    coordinates (S^T Y(:,1:b) is upper triangular); no pivoting happens
    inside the sweep.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    if b > n:
        raise ValueError(f"cannot choose {b} pivots from {n} columns")
    if b > y.shape[1]:
        raise DimensionError(f"sketch has {y.shape[1]} columns, need at least {b}")
    _, refl, _ = _sweep(y, b, False)
    return ReflectorPivot(wy_accumulate(refl, n))
