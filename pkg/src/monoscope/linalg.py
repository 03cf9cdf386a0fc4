"""
Dense complex linear algebra for small multiqubit systems.

Every routine accepts either a single matrix of shape ``(n, n)`` or a stack
of matrices of shape ``(..., n, n)``; leading axes are treated as batch axes.
Subsystem 0 is the slowest-varying (most significant) tensor index.
"""

import numpy as np

__all__ = [
    "HERMITIAN_TOL",
    "JACOBI_TOL",
    "JACOBI_MAX_SWEEPS",
    "MAX_DIM",
    "DimensionError",
    "NotHermitianError",
    "kron",
    "partial_transpose",
    "partial_trace",
    "hermitian_eigenvalues",
    "trace_norm_hermitian",
]

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
MAX_DIM = 64


class DimensionError(ValueError):
    """Matrix shape inconsistent with the subsystem dimensions, or too large."""


class NotHermitianError(ValueError):
    """Input deviates from Hermiticity by more than ``HERMITIAN_TOL``."""


def _check_dim(n):
    if n > MAX_DIM:
        raise DimensionError(f"matrix dimension {n} exceeds supported maximum {MAX_DIM}")


def kron(a, b):
    """
    Kronecker product of two matrices, or of two equally batched stacks
    ``(..., r, c)`` taken pairwise.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim < 2 or b.ndim < 2:
        raise DimensionError("kron expects matrices")
    rows, cols = a.shape[-2] * b.shape[-2], a.shape[-1] * b.shape[-1]
    _check_dim(max(rows, cols))
    if a.ndim == 2 and b.ndim == 2:
        return np.kron(a, b)
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(out.shape[:-4] + (rows, cols))


def _square_split(rho, dims):
    rho = np.asarray(rho)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    n = int(np.prod(dims))
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
        raise DimensionError(f"expected square matrix, got shape {rho.shape}")
    if rho.shape[-1] != n:
        raise DimensionError(f"matrix dimension {rho.shape[-1]} does not match dims {dims}")
    return rho, dims, n


def partial_transpose(rho, dims, transpose_mask):
    """
    Transpose the indices of the subsystems flagged in ``transpose_mask``.

    Parameters
    ----------
    rho : array_like, shape (..., n, n)
    dims : sequence of int
        Local dimensions, product ``n``.
    transpose_mask : sequence of bool
        One flag per subsystem.

    Returns
    -------
    numpy.ndarray
        Same shape as ``rho``.
    """
    rho, dims, n = _square_split(rho, dims)
    mask = [bool(x) for x in transpose_mask]
    if len(mask) != len(dims):
        raise DimensionError(f"mask length {len(mask)} != number of subsystems {len(dims)}")
    batch = rho.shape[:-2]
    k = len(dims)
    nb = len(batch)
    t = rho.reshape(batch + dims + dims)
    axes = list(range(nb + 2 * k))
    for i, flag in enumerate(mask):
        if flag:
            axes[nb + i], axes[nb + k + i] = axes[nb + k + i], axes[nb + i]
    return t.transpose(axes).reshape(batch + (n, n))


def partial_trace(rho, dims, keep):
    """
    Trace out every subsystem not listed in ``keep``.

    The kept subsystems appear in ascending index order in the result.
    """
    rho, dims, _ = _square_split(rho, dims)
    keep = sorted(set(int(i) for i in keep))
    if not keep:
        raise DimensionError("keep set must not be empty")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"subsystem index out of range for dims {dims}: {keep}")
    batch = rho.shape[:-2]
    k = len(dims)
    t = rho.reshape(batch + dims + dims)
    # einsum labels: '...' batch, row labels 0..k-1, column labels k..2k-1;
    # traced subsystems share their row label.
    row = list(range(k))
    col = [k + i if i in keep else i for i in range(k)]
    out = [i for i in keep] + [k + i for i in keep]
    red = np.einsum(t, [Ellipsis] + row + col, [Ellipsis] + out)
    m = int(np.prod([dims[i] for i in keep]))
    return red.reshape(batch + (m, m))


def _jacobi_sweeps(a):
    """Cyclic complex Jacobi on a (B, n, n) Hermitian stack, in place."""
    n = a.shape[-1]
    if n == 1:
        return
    iu = np.triu_indices(n, 1)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=1))
        rows = np.nonzero(off >= JACOBI_TOL)[0]
        if rows.size == 0:
            return
        sub = a[rows]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = sub[:, p, q]
                mag = np.abs(apq)
                nz = mag > 0.0
                if not nz.any():
                    continue
                safe = np.where(nz, mag, 1.0)
                phase = np.where(nz, apq / safe, 1.0)
                app = sub[:, p, p].real
                aqq = sub[:, q, q].real
                tau = (aqq - app) / (2.0 * safe)
                t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
                t = np.where(nz, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U restricted to (p, q): [[e^{i phi} c, e^{i phi} s], [-s, c]]
                upp = phase * c
                upq = phase * s
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q]
                sub[:, :, p] = colp * upp[:, None] - colq * s[:, None]
                sub[:, :, q] = colp * upq[:, None] + colq * c[:, None]
                rowp = sub[:, p, :].copy()
                rowq = sub[:, q, :]
                sub[:, p, :] = rowp * np.conj(upp)[:, None] - rowq * s[:, None]
                sub[:, q, :] = rowp * np.conj(upq)[:, None] + rowq * c[:, None]
                sub[:, p, q] = 0.0
                sub[:, q, p] = 0.0
                sub[:, p, p] = sub[:, p, p].real
                sub[:, q, q] = sub[:, q, q].real
        a[rows] = sub


def hermitian_eigenvalues(h):
    """
    Eigenvalues of a Hermitian matrix (or stack), sorted descending.

    Uses cyclic complex Jacobi rotations; a stack is rotated in lockstep and
    converged members drop out of later sweeps.

    Raises
    ------
    NotHermitianError
        If ``max|h - h^H|`` exceeds ``HERMITIAN_TOL``.
    """
    h = np.asarray(h)
    if h.ndim < 2 or h.shape[-1] != h.shape[-2]:
        raise DimensionError(f"expected square matrix, got shape {h.shape}")
    n = h.shape[-1]
    _check_dim(n)
    batch = h.shape[:-2]
    a = np.array(h, dtype=np.complex128).reshape((-1, n, n))
    if a.shape[0] == 0:
        return np.zeros(batch + (n,))
    dev = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2))))
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    _jacobi_sweeps(a)
    ev = np.diagonal(a, axis1=-2, axis2=-1).real
    ev = -np.sort(-ev, axis=-1)
    return ev.reshape(batch + (n,))


def trace_norm_hermitian(h):
    """Sum of absolute eigenvalues of a Hermitian matrix (or stack)."""
    return np.sum(np.abs(hermitian_eigenvalues(h)), axis=-1)
