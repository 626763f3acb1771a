"""Blocked QR with randomized block pivoting, and its rank-revealing variant.

`block_qr` sweeps the matrix one b-column panel at a time: sketch the
trailing block, pick b pivots at once (permutation or reflector product),
move them into the panel, factor the panel by a two-stage pivoted QR, and
fold the panel's Q into the trailing columns.  All interaction with
not-yet-factored data happens through matrix-matrix products; orthogonal
factors stay in compact form throughout and are only expanded by the
test/metrics helpers.

`block_rrqr` upgrades the sweep to a rank-revealing factorization: the
sketch is power-iterated with over-sampling, pivots are always reflector
products, and the panel is resolved by a small SVD instead of a QR, which
makes each diagonal b x b block of R exactly diagonal and drives its
entries toward the matrix's singular values.
"""

from dataclasses import dataclass, field

import numpy as np

from . import householder
from .errors import DimensionError
from .householder import (
    WYFactor,
    apply_wy_left,
    qr_column_pivoted,
    qr_tall_pivoted,
    qr_unpivoted,
)
from .pivoting import (
    PermutationPivot,
    ReflectorPivot,
    SketchConfig,
    build_sketch,
    select_pivot_permutation,
    select_pivot_reflectors,
)
from .svd import svd_full


@dataclass
class BlockConfig:
    block: int
    sketch: SketchConfig | None = None  # None: plain width-b sketch, q=0, r=0
    pivot_kind: str = "permutation"  # or "reflectors"
    rrqr: bool = False

    def resolved_sketch(self):
        return self.sketch if self.sketch is not None else SketchConfig(block=self.block)


@dataclass
class DenseOrtho:
    """Small dense orthonormal block acting on a contiguous index range."""

    mat: np.ndarray

    def apply_right(self, a):
        return a @ self.mat

    def to_dense(self):
        return self.mat


def _embed_wy(wy, m, start):
    """Pad a WYFactor on a trailing subspace out to row dimension m."""
    if wy.dim == m and start == 0:
        return wy
    w = np.zeros((m, wy.count), order="F")
    w[start:, :] = wy.w
    y = np.zeros((wy.count, m), order="F")
    y[:, start:] = wy.y
    return WYFactor(w, y)


@dataclass
class QTransform:
    """One left factor Q_i = WY * diag(I_offset, small, I), applied in that order.

    Plain QR panels carry only the WY part; RRQR panels also carry the
    small dense U' of the panel SVD; the SVD baseline adapter carries only
    a dense block.  The WY factor is stored at full row dimension.
    """

    wy: WYFactor | None
    small: np.ndarray | None = None
    offset: int = 0

    def left_multiply(self, a):
        """Q_i @ a (dense expansion helper)."""
        out = np.array(a, dtype=np.float64, order="F", copy=True)
        if self.small is not None:
            w = self.small.shape[0]
            out[self.offset : self.offset + w, :] = self.small @ out[self.offset : self.offset + w, :]
        if self.wy is not None:
            out = apply_wy_left(self.wy, out)
        return out


@dataclass
class RightTransform:
    """One right factor: a pivot transform acting on columns offset..offset+size."""

    offset: int
    op: PermutationPivot | ReflectorPivot | DenseOrtho

    def right_multiply(self, a):
        """a @ P_i (dense expansion helper)."""
        if isinstance(self.op, PermutationPivot):
            width = len(self.op.order)
        elif isinstance(self.op, ReflectorPivot):
            width = self.op.wy.dim
        else:
            width = self.op.mat.shape[0]
        out = np.array(a, dtype=np.float64, order="F", copy=True)
        cols = out[:, self.offset : self.offset + width]
        out[:, self.offset : self.offset + width] = self.op.apply_right(cols)
        return out


@dataclass
class Factorization:
    """A P = Q R with Q and P held as ordered lists of structured factors."""

    m: int
    n: int
    b: int
    method: str  # "perm_pivot", "reflector_pivot", "rrqr", or a baseline tag
    q_transforms: list = field(default_factory=list)
    p_transforms: list = field(default_factory=list)
    r: np.ndarray | None = None

    def expand_q(self, cols=None):
        """Dense Q with orthonormal columns, m x cols (default economy m x n)."""
        householder.dense_expansions += 1
        cols = self.n if cols is None else cols
        q = np.eye(self.m, cols, order="F")
        for t in reversed(self.q_transforms):
            q = t.left_multiply(q)
        return q

    def expand_p(self):
        """Dense orthonormal P, n x n."""
        householder.dense_expansions += 1
        p = np.eye(self.n, order="F")
        for t in self.p_transforms:
            p = t.right_multiply(p)
        return p


def _check_input(a, cfg):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionError("expected a 2-d matrix")
    m, n = a.shape
    if m < n:
        raise DimensionError(f"blocked QR needs rows >= cols, got {m}x{n}")
    if not 1 <= cfg.block <= n:
        raise DimensionError(f"block size must lie in [1, {n}], got {cfg.block}")
    return np.array(a, dtype=np.float64, order="F", copy=True)


def _pivot_for_panel(work, start, b, cfg, rng):
    """Sketch the trailing block and choose b pivots; returns the transform."""
    trailing = work[start:, start:]
    s = cfg.resolved_sketch()
    scfg = SketchConfig(b, s.oversample, s.power, s.orthonormalize_between_powers)
    y = build_sketch(trailing, scfg, rng)
    if cfg.pivot_kind == "reflectors":
        return select_pivot_reflectors(y, b)
    return select_pivot_permutation(y, b)


def block_qr(a, cfg, rng, inspect=None):
    """Blocked QR with randomized block pivoting (permutation or reflectors).

    Per panel: sketch the trailing block, build the pivot transform, apply
    it to the trailing columns at full height, factor the panel by the
    two-stage pivoted QR, then update the remaining columns with the
    panel's Q^T via matmuls.  The final block (width <= b) skips the
    sketch and is factored by classical column-pivoted QR.

    `inspect(panel_index, working_matrix)` is called with a copy of the
    working matrix after each completed panel, 1-based, when provided.
    """
    work = _check_input(a, cfg)
    m, n = work.shape
    b = cfg.block
    f = Factorization(m, n, b, "reflector_pivot" if cfg.pivot_kind == "reflectors" else "perm_pivot")
    panel = 0
    start = 0
    while start < n:
        panel += 1
        if n - start <= b:
            res = qr_column_pivoted(work[start:, start:])  # no sketch for the last block
            work[:start, start:] = work[:start, start:][:, res.perm]
            work[start:, start:] = res.r
            f.q_transforms.append(QTransform(_embed_wy(res.q, m, start)))
            f.p_transforms.append(RightTransform(start, PermutationPivot(res.perm)))
            if inspect is not None:
                inspect(panel, work.copy())
            break
        pivot = _pivot_for_panel(work, start, b, cfg, rng)
        work[:, start:] = pivot.apply_right(work[:, start:])
        res = qr_tall_pivoted(work[start:, start : start + b])
        # the panel's inner permutation also reorders the processed rows above it
        work[:start, start : start + b] = work[:start, start : start + b][:, res.perm]
        work[start:, start : start + b] = res.r
        tail = work[start:, start + b :]
        work[start:, start + b :] = apply_wy_left(res.q, tail, transposed=True)
        f.q_transforms.append(QTransform(_embed_wy(res.q, m, start)))
        f.p_transforms.append(RightTransform(start, pivot))
        f.p_transforms.append(RightTransform(start, PermutationPivot(res.perm)))
        if inspect is not None:
            inspect(panel, work.copy())
        start += b
    f.r = work
    return f


def panel_svd(panel):
    """Two-stage SVD of a tall panel: unpivoted QR, then SVD of the triangle.

    Returns (QTransform, d, v): the left transform U~ = Q~ * diag(U', I)
    with rows indexed local to the panel, the b singular values
    (non-increasing), and the b x b right factor V~.  Reconstruction:
    panel = U~ [diag(d); 0] V~^T.
    """
    panel = np.asarray(panel, dtype=np.float64)
    mp, b = panel.shape
    if mp < b:
        raise DimensionError(f"panel must be tall, got {mp}x{b}")
    qr = qr_unpivoted(panel)
    res = svd_full(qr.r[:b, :])
    return QTransform(qr.q, res.u, 0), res.d, res.v


def block_rrqr(a, cfg, rng, inspect=None):
    """Rank-revealing blocked factorization: reflector pivots plus panel SVDs.

    Same sweep as block_qr but the sketch is power-iterated (cfg.sketch),
    pivots are always reflector products, and each panel is resolved by
    panel_svd, so R's diagonal b x b blocks come out exactly diagonal and
    the right transforms pick up the panel's V~.  The final block is
    resolved by one small SVD via the same two-stage route.
    """
    work = _check_input(a, cfg)
    m, n = work.shape
    b = cfg.block
    cfg = BlockConfig(b, cfg.resolved_sketch(), "reflectors", True)
    f = Factorization(m, n, b, "rrqr")
    panel = 0
    start = 0
    while start < n:
        width = min(b, n - start)
        panel += 1
        final = n - start <= b
        if not final:
            pivot = _pivot_for_panel(work, start, b, cfg, rng)
            work[:, start:] = pivot.apply_right(work[:, start:])
            f.p_transforms.append(RightTransform(start, pivot))
        lt, d, v = panel_svd(work[start:, start : start + width])
        # V~ reorders/mixes the panel columns, including their processed rows
        work[:start, start : start + width] = work[:start, start : start + width] @ v
        blk = np.zeros((m - start, width), order="F")
        np.fill_diagonal(blk, d)
        work[start:, start : start + width] = blk
        if not final:
            tail = apply_wy_left(lt.wy, work[start:, start + width :], transposed=True)
            tail[:width, :] = lt.small.T @ tail[:width, :]
            work[start:, start + width :] = tail
        f.q_transforms.append(QTransform(_embed_wy(lt.wy, m, start), lt.small, start))
        f.p_transforms.append(RightTransform(start, DenseOrtho(v)))
        if inspect is not None:
            inspect(panel, work.copy())
        start += width
    f.r = work
    return f
