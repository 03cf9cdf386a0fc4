"""
Pure and mixed multiqubit states: construction, sampling and classification.

Sampling comes in two flavours.  The single-state samplers take a
:class:`~monoscope.rng.SeededRng` and consume it sequentially; the ``*_block``
samplers take an array of per-sample seeds and return one state per row.
For a given seed the two produce identical amplitudes.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .rng import SeededRng, block_normals, block_uniforms

__all__ = [
    "TANGLE_TOL",
    "SIMPLEX_FLOOR",
    "RESAMPLE_CAP",
    "InvalidStateError",
    "ClassLabel",
    "PureState",
    "DensityMatrix",
    "GGHZParams",
    "basis_state",
    "ghz_state",
    "w_state",
    "gghz_state",
    "haar_random_pure",
    "sample_ghz_class",
    "sample_w_class",
    "haar_block",
    "ghz_class_block",
    "w_class_block",
    "three_tangle",
    "three_tangle_array",
    "single_site_max_eigenvalues",
    "classify",
    "reduced_density",
]

TANGLE_TOL = 1e-9
SIMPLEX_FLOOR = 1e-6
RESAMPLE_CAP = 10_000
NORM_TOL = 1e-10
PSD_TOL = 1e-8
TRACE_TOL = 1e-10


class InvalidStateError(ValueError):
    """Amplitudes or density matrix fail normalization, positivity or shape checks."""


class ClassLabel(enum.Enum):
    GHZ_CLASS = "ghz"
    W_CLASS = "w"
    BISEPARABLE = "biseparable"
    PRODUCT = "product"


@dataclass(frozen=True)
class PureState:
    """Normalized state vector with per-party dimensions."""

    amplitudes: np.ndarray
    dims: tuple = field(default=None)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = self.dims
        if dims is None:
            nq = int(round(np.log2(amps.size)))
            if 2**nq != amps.size:
                raise InvalidStateError(f"cannot infer qubit dims for {amps.size} amplitudes")
            dims = (2,) * nq
        dims = tuple(int(d) for d in dims)
        if int(np.prod(dims)) != amps.size:
            raise InvalidStateError(f"{amps.size} amplitudes do not match dims {dims}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state is not normalized (|psi|^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    @property
    def num_parties(self):
        return len(self.dims)

    def density(self):
        """Return ``|psi><psi|`` as a :class:`DensityMatrix`."""
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix with party dimensions."""

    matrix: np.ndarray
    dims: tuple

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        dims = tuple(int(d) for d in self.dims)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != int(np.prod(dims)):
            raise InvalidStateError(f"matrix shape {m.shape} does not match dims {dims}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace {tr!r} differs from 1")
        try:
            ev = linalg.hermitian_eigenvalues(m)
        except linalg.NotHermitianError as exc:
            raise InvalidStateError(str(exc)) from exc
        if ev[-1] < -PSD_TOL:
            raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {ev[-1]:.3e})")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def num_parties(self):
        return len(self.dims)


@dataclass(frozen=True)
class GGHZParams:
    alpha: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


def basis_state(bits):
    """Computational basis state, e.g. ``basis_state("000")``."""
    n = len(bits)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return PureState(amps)


def ghz_state(n=3):
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(amps)


def w_state(n=3):
    amps = np.zeros(2**n, dtype=np.complex128)
    for k in range(n):
        amps[1 << k] = 1.0 / np.sqrt(n)
    return PureState(amps)


def gghz_state(p):
    """``sqrt(alpha)|000> + sqrt(1 - alpha) e^{i phi} |111>``."""
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = np.sqrt(p.alpha)
    amps[7] = np.sqrt(1.0 - p.alpha) * np.exp(1j * p.phi)
    return PureState(amps)


def _normalize_rows(z):
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def _haar_from_normals(g):
    d = g.shape[-1] // 2
    return _normalize_rows(g[:, :d] + 1j * g[:, d:])


def haar_random_pure(dims, rng):
    """
    Haar-distributed pure state: i.i.d. complex Gaussian amplitudes, normalized.
    """
    dims = tuple(int(x) for x in dims)
    d = int(np.prod(dims))
    g = rng.normals(2 * d)
    return PureState(_haar_from_normals(g[None, :])[0], dims)


def haar_block(seeds, dim=8):
    """Haar states for a block of streams, shape ``(len(seeds), dim)``."""
    return _haar_from_normals(block_normals(seeds, 2 * dim))


def three_tangle_array(amps):
    """Three-tangle of a stack of three-qubit amplitude vectors ``(..., 8)``."""
    a = np.asarray(amps)
    a000, a001, a010, a011, a100, a101, a110, a111 = (a[..., i] for i in range(8))
    d1 = (a000**2 * a111**2 + a001**2 * a110**2
          + a010**2 * a101**2 + a100**2 * a011**2)
    d2 = (a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010
          + a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010
          + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001)
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return 4.0 * np.abs(d1 - 2.0 * d2 + 4.0 * d3)


def three_tangle(psi):
    """Three-tangle (Cayley hyperdeterminant) of a three-qubit pure state."""
    if psi.dims != (2, 2, 2):
        raise InvalidStateError(f"three-tangle needs three qubits, got dims {psi.dims}")
    return float(three_tangle_array(psi.amplitudes))


def single_site_max_eigenvalues(amps):
    """
    Largest eigenvalue of each single-qubit reduction for three-qubit stacks.

    Returns an array ``(..., 3)``.
    """
    amps = np.asarray(amps)
    batch = amps.shape[:-1]
    flat = amps.reshape((-1, 8))
    out = np.empty((flat.shape[0], 3))
    for site in range(3):
        t = np.moveaxis(flat.reshape(-1, 2, 2, 2), site + 1, 1).reshape(-1, 2, 4)
        rho = np.einsum("bik,bjk->bij", t, t.conj())
        out[:, site] = linalg.hermitian_eigenvalues(rho)[:, 0]
    return out.reshape(batch + (3,))


def _ghz_class_ok(amps):
    lam = single_site_max_eigenvalues(amps)
    return (three_tangle_array(amps) > TANGLE_TOL) & np.all(lam < 1.0 - linalg.HERMITIAN_TOL, axis=-1)


def sample_ghz_class(rng):
    """Haar three-qubit state, resampled until it is genuinely GHZ-class."""
    for _ in range(RESAMPLE_CAP):
        psi = haar_random_pure((2, 2, 2), rng)
        if _ghz_class_ok(psi.amplitudes[None, :])[0]:
            return psi
    raise RuntimeError("GHZ-class resample cap exceeded; random stream is degenerate")


def ghz_class_block(seeds):
    """
    Block version of :func:`sample_ghz_class`.

    Returns ``(amplitudes, rejections)`` where ``rejections`` counts the raw
    Haar draws discarded across the block.
    """
    seeds = np.asarray(seeds, dtype=np.uint64).reshape(-1)
    out = np.empty((seeds.size, 8), dtype=np.complex128)
    pending = np.arange(seeds.size)
    rejected = 0
    for attempt in range(RESAMPLE_CAP):
        g = block_normals(seeds[pending], 16, offset=16 * attempt)
        amps = _haar_from_normals(g)
        ok = _ghz_class_ok(amps)
        out[pending[ok]] = amps[ok]
        rejected += int((~ok).sum())
        pending = pending[~ok]
        if pending.size == 0:
            return out, rejected
    raise RuntimeError("GHZ-class resample cap exceeded; random stream is degenerate")


def _w_from_uniforms(u):
    e = -np.log(u)
    p = e / e.sum(axis=-1, keepdims=True)
    amps = np.zeros((u.shape[0], 8), dtype=np.complex128)
    amps[:, 0b001] = np.sqrt(p[:, 0])
    amps[:, 0b010] = np.sqrt(p[:, 1])
    amps[:, 0b100] = np.sqrt(p[:, 2])
    amps[:, 0b000] = np.sqrt(p[:, 3])
    return amps, np.all(p[:, :3] > SIMPLEX_FLOOR, axis=-1)


def sample_w_class(rng):
    """
    W-class canonical state ``sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100> + sqrt(d)|000>``
    with ``(a, b, c, d)`` uniform on the simplex and ``a, b, c`` above the floor.
    """
    for _ in range(RESAMPLE_CAP):
        amps, ok = _w_from_uniforms(rng.uniforms(4)[None, :])
        if ok[0]:
            return PureState(amps[0], (2, 2, 2))
    raise RuntimeError("W-class resample cap exceeded; random stream is degenerate")


def w_class_block(seeds):
    """Block version of :func:`sample_w_class`; returns ``(amplitudes, rejections)``."""
    seeds = np.asarray(seeds, dtype=np.uint64).reshape(-1)
    out = np.empty((seeds.size, 8), dtype=np.complex128)
    pending = np.arange(seeds.size)
    rejected = 0
    for attempt in range(RESAMPLE_CAP):
        amps, ok = _w_from_uniforms(block_uniforms(seeds[pending], 4, offset=4 * attempt))
        out[pending[ok]] = amps[ok]
        rejected += int((~ok).sum())
        pending = pending[~ok]
        if pending.size == 0:
            return out, rejected
    raise RuntimeError("W-class resample cap exceeded; random stream is degenerate")


def classify(psi):
    """SLOCC class of a three-qubit pure state."""
    if psi.dims != (2, 2, 2):
        raise InvalidStateError(f"classification needs three qubits, got dims {psi.dims}")
    lam = single_site_max_eigenvalues(psi.amplitudes)
    pure_sites = int(np.sum(lam >= 1.0 - linalg.HERMITIAN_TOL))
    if pure_sites == 3:
        return ClassLabel.PRODUCT
    if pure_sites >= 1:
        return ClassLabel.BISEPARABLE
    if three_tangle(psi) > TANGLE_TOL:
        return ClassLabel.GHZ_CLASS
    return ClassLabel.W_CLASS


def reduced_density(psi, keep):
    """Reduced state of ``psi`` on the subsystems in ``keep``."""
    keep = sorted(set(keep))
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    red = linalg.partial_trace(rho, psi.dims, keep)
    return DensityMatrix(red, tuple(psi.dims[i] for i in keep))
