"""Counter-based Gaussian sampling.

Draws are indexed, not streamed: draw k of a given seed is a pure function
of (seed, k), so the sequence is reproducible across platforms and across
processes regardless of how the draws are batched.  The integer engine is
splitmix64; normals come from the cosine branch of Box-Muller.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = float(2.0**-53)


@dataclass
class RngState:
    """Seed plus the index of the next normal draw to consume."""

    seed: int
    counter: int = 0


def _mix(z):
    # splitmix64 finalizer; z is a uint64 array, arithmetic wraps mod 2^64
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _raw(seed, idx):
    """Word idx of the stream for seed, as a uint64 array."""
    with np.errstate(over="ignore"):
        return _mix(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (idx + np.uint64(1)) * _GAMMA)


def _normals(seed, draw_index):
    """Standard normals for an array of draw indices."""
    k = draw_index.astype(np.uint64)
    with np.errstate(over="ignore"):
        r1 = _raw(seed, np.uint64(2) * k)
        r2 = _raw(seed, np.uint64(2) * k + np.uint64(1))
    # u1 in (0, 1] so the log below is finite; u2 in [0, 1)
    u1 = ((r1 >> np.uint64(11)).astype(np.float64) + 1.0) * _INV53
    u2 = (r2 >> np.uint64(11)).astype(np.float64) * _INV53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def gaussian_matrix(rows, cols, rng):
    """Sample a rows x cols matrix of i.i.d. standard normals.

    Entries are assigned in column-major order, so a (p, q) sample is the
    leading block of any taller/wider sample only column by column.  The
    state's counter advances by rows*cols; calling again continues the
    stream rather than repeating it.
    """
    if rows < 1 or cols < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {rows}x{cols}")
    count = rows * cols
    idx = np.uint64(rng.counter) + np.arange(count, dtype=np.uint64)
    z = _normals(rng.seed, idx)
    rng.counter += count
    return z.reshape((rows, cols), order="F")
