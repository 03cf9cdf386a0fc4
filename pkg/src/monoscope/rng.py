"""
Counter-based, splittable 64-bit random streams.

A stream is identified by a 64-bit seed; its ``k``-th output is the
SplitMix64 finalizer applied to ``seed + (k + 1) * golden``.  Child seeds are
``mix(parent, index)``, so sample ``i`` of an experiment depends only on the
master seed and ``i``, never on how the work was scheduled.

Draws can be taken one stream at a time through :class:`SeededRng` or for
many streams at once through :func:`block_uniforms` / :func:`block_normals`;
both produce identical numbers for the same seed and counter.
"""

import numpy as np

__all__ = ["SeededRng", "mix", "child_seeds", "block_uniforms", "block_normals"]

_MASK = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _fmix(z):
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _as_u64(x):
    if isinstance(x, (int, np.integer)):
        return np.array([int(x) & _MASK], dtype=np.uint64)
    return np.asarray(x).astype(np.uint64)


def mix(a, b):
    """Derive a child seed from a parent seed ``a`` and stream index ``b``."""
    a = _as_u64(a)
    b = _as_u64(b)
    out = _fmix(_fmix(a) + _GOLDEN * (b + np.uint64(1)))
    return out


def child_seeds(master, indices):
    """Child seeds ``mix(master, i)`` for an array of indices."""
    return mix(np.full(np.shape(indices), int(master) & _MASK, dtype=np.uint64), indices)


def _raw(seeds, n, offset):
    seeds = _as_u64(seeds).reshape(-1)
    k = np.arange(offset + 1, offset + n + 1, dtype=np.uint64)
    return _fmix(seeds[:, None] + _GOLDEN * k[None, :])


def block_uniforms(seeds, n, offset=0):
    """
    Uniform doubles in the open interval (0, 1).

    Returns an array of shape ``(len(seeds), n)``; row ``r`` holds outputs
    ``offset .. offset + n - 1`` of stream ``seeds[r]``.
    """
    raw = _raw(seeds, n, offset)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def block_normals(seeds, n, offset=0):
    """
    Standard normal deviates via Box-Muller, consuming ``2 * ceil(n / 2)``
    uniforms per stream starting at ``offset``.
    """
    m = (n + 1) // 2
    u = block_uniforms(seeds, 2 * m, offset)
    r = np.sqrt(-2.0 * np.log(u[:, 0::2]))
    theta = 2.0 * np.pi * u[:, 1::2]
    z = np.empty((u.shape[0], 2 * m))
    z[:, 0::2] = r * np.cos(theta)
    z[:, 1::2] = r * np.sin(theta)
    return z[:, :n]


class SeededRng:
    """
    A single counter-based stream.

    Parameters
    ----------
    seed : int
        64-bit seed; larger values are reduced modulo 2**64.
    """

    def __init__(self, seed):
        self.seed = int(seed) & _MASK
        self.counter = 0

    def __repr__(self):
        return f"SeededRng(seed={self.seed:#x}, counter={self.counter})"

    def child(self, index):
        return SeededRng(int(mix(self.seed, index)[0]))

    def uniforms(self, n):
        out = block_uniforms(self.seed, n, self.counter)[0]
        self.counter += n
        return out

    def normals(self, n):
        used = 2 * ((n + 1) // 2)
        out = block_normals(self.seed, n, self.counter)[0]
        self.counter += used
        return out
