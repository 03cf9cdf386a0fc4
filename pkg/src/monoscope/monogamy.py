"""
Negativity and negativity monogamy scores.

The multicopy and paired-state scores never build the large tensor-power
matrices: they follow from the single-copy negativities, collected in a
:class:`ScoreParts`, through closed forms.  :func:`explicit_multicopy_oracle`
builds the matrices anyway (for small cases) so the closed forms can be
checked against brute force.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import (
    PSD_TOL,
    TRACE_TOL,
    ClassLabel,
    DensityMatrix,
    InvalidStateError,
    PureState,
    classify,
    single_site_max_eigenvalues,
)

__all__ = [
    "MONOGAMY_TOL",
    "LOG_OVERFLOW",
    "ScoreParts",
    "ActivationRecord",
    "negativity",
    "negativity_from_spectrum",
    "pure_negativity_one_vs_rest",
    "negativity_m_copies",
    "negativity_product",
    "score_parts",
    "monogamy_score",
    "monogamy_score_m_copies",
    "multicopy_scores",
    "minimal_activation_copies",
    "minimal_activation_copies_array",
    "pair_score_three_party",
    "pair_score_four_party",
    "explicit_multicopy_oracle",
    "explicit_product_oracle",
    "activation_record",
    "pure_parts_array",
    "score_parts_array",
]

MONOGAMY_TOL = 1e-10
# (1 + 2N)^m above 1e300 switches the score to a log-domain sign decision
LOG_OVERFLOW = math.log(1e300)


@dataclass(frozen=True)
class ScoreParts:
    """Single-copy negativities seen from the nodal party."""

    n_one_rest: float
    n_pair: tuple
    nodal: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n_pair", tuple(float(x) for x in self.n_pair))
        object.__setattr__(self, "n_one_rest", float(self.n_one_rest))
        if self.n_one_rest < 0 or any(x < 0 for x in self.n_pair):
            raise ValueError("negativities must be non-negative")

    @classmethod
    def zero(cls, k=2):
        return cls(0.0, (0.0,) * k)


@dataclass(frozen=True)
class ActivationRecord:
    delta_1: float
    delta_2: float
    m_min: int | None
    label: ClassLabel
    ggm: float


def negativity_from_spectrum(ev):
    """Absolute sum of the negative eigenvalues along the last axis."""
    ev = np.asarray(ev)
    return -np.sum(np.minimum(ev, 0.0), axis=-1)


def _validate_density(rho):
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.max(np.abs(tr - 1.0)) > TRACE_TOL:
        raise InvalidStateError("density matrix trace differs from 1")
    ev = linalg.hermitian_eigenvalues(rho)
    if np.min(ev[..., -1]) < -PSD_TOL:
        raise InvalidStateError("density matrix is not positive semidefinite")


def negativity(rho, dims, side_mask, validate=True):
    """
    Negativity of the bipartition selected by ``side_mask``.

    Parameters
    ----------
    rho : DensityMatrix or array_like, shape (..., n, n)
    dims : sequence of int
    side_mask : sequence of bool
        Subsystems on the transposed side.
    validate : bool
        Check trace and positivity first.

    Returns
    -------
    float or numpy.ndarray
        ``sum |negative eigenvalues|`` of the partial transpose, which equals
        ``(||rho^T||_1 - 1) / 2``; the two are cross-checked.
    """
    if isinstance(rho, DensityMatrix):
        rho = rho.matrix
    rho = np.asarray(rho, dtype=np.complex128)
    if validate:
        _validate_density(rho)
    ev = linalg.hermitian_eigenvalues(linalg.partial_transpose(rho, dims, side_mask))
    neg = negativity_from_spectrum(ev)
    via_norm = 0.5 * (np.sum(np.abs(ev), axis=-1) - 1.0)
    if np.max(np.abs(neg - via_norm)) > 1e-10:
        raise ArithmeticError("negativity and trace-norm forms disagree")
    return float(neg) if np.ndim(neg) == 0 else neg


def pure_negativity_one_vs_rest(psi, nodal=0):
    """``sqrt(l (1 - l))`` with ``l`` the top eigenvalue of the nodal qubit's reduction."""
    if psi.dims[nodal] != 2:
        raise InvalidStateError(f"nodal subsystem {nodal} is not a qubit")
    rho = linalg.partial_trace(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dims, [nodal])
    lam = linalg.hermitian_eigenvalues(rho)[0]
    return float(math.sqrt(max(lam * (1.0 - lam), 0.0)))


def negativity_m_copies(n, m):
    """Negativity of ``m`` copies of a state with single-copy negativity ``n``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    with np.errstate(over="ignore"):
        out = 0.5 * np.expm1(m * np.log1p(2.0 * np.asarray(n, dtype=float)))
    return float(out) if np.ndim(out) == 0 else out


def negativity_product(n_rho, n_sigma):
    """Negativity of ``rho (x) sigma`` across the joint cut."""
    return n_rho * (1.0 + n_sigma) + n_sigma * (1.0 + n_rho)


def _state_matrix(state):
    if isinstance(state, PureState):
        a = state.amplitudes
        return np.outer(a, a.conj()), state.dims
    if isinstance(state, DensityMatrix):
        return state.matrix, state.dims
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def score_parts(state, nodal=0):
    """
    ``N(nodal : rest)`` and every ``N(nodal : i)`` for a pure or mixed state.
    """
    rho, dims = _state_matrix(state)
    k = len(dims)
    if not 0 <= nodal < k:
        raise IndexError(f"nodal index {nodal} out of range")
    mask = [i == nodal for i in range(k)]
    n_rest = negativity(rho, dims, mask)
    pairs = []
    for i in range(k):
        if i == nodal:
            continue
        keep = sorted((nodal, i))
        red = linalg.partial_trace(rho, dims, keep)
        sub_mask = [j == nodal for j in keep]
        pairs.append(negativity(red, [dims[j] for j in keep], sub_mask))
    return ScoreParts(max(n_rest, 0.0) + 0.0, tuple(max(x, 0.0) + 0.0 for x in pairs), nodal)


def monogamy_score(parts):
    return parts.n_one_rest - sum(parts.n_pair)


def multicopy_scores(n_one_rest, n_pair, m):
    """
    Vectorized ``m``-copy monogamy score.

    ``n_one_rest`` has shape ``(...)`` and ``n_pair`` shape ``(..., k)``.
    Where any ``(1 + 2N)^m`` exceeds 1e300 only the sign is meaningful and
    the result is ``+inf``, ``-inf`` or ``0``.
    """
    a = np.asarray(n_one_rest, dtype=float)
    b = np.asarray(n_pair, dtype=float)
    k = b.shape[-1]
    la = m * np.log1p(2.0 * a)
    lb = m * np.log1p(2.0 * b)
    big = np.maximum(la, np.max(lb, axis=-1, initial=0.0)) > LOG_OVERFLOW
    with np.errstate(over="ignore", invalid="ignore"):
        # (1+2a)^m - sum (1+2b_i)^m + (k - 1) == expm1(la) - sum expm1(lb_i)
        direct = 0.5 * (np.expm1(la) - np.sum(np.expm1(lb), axis=-1))
    if not np.any(big):
        return direct
    pos = la if k <= 1 else np.logaddexp(la, math.log(k - 1))
    negs = np.logaddexp.reduce(lb, axis=-1) if k else np.full_like(la, -np.inf)
    with np.errstate(invalid="ignore"):
        capped = np.where(pos == negs, 0.0, np.sign(pos - negs) * np.inf)
    return np.where(big, capped, direct)


def monogamy_score_m_copies(parts, m):
    """Monogamy score of ``m`` copies, from single-copy negativities."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return float(multicopy_scores(parts.n_one_rest, np.array(parts.n_pair), m))


def minimal_activation_copies(parts, m_max=10_000):
    """
    Smallest ``m`` in ``[1, m_max]`` whose ``m``-copy score is ``>= -MONOGAMY_TOL``.

    Returns ``None`` when no such ``m`` exists in range.  Scans linearly; the
    score need not be monotone in ``m``.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    for m in range(1, m_max + 1):
        if monogamy_score_m_copies(parts, m) >= -MONOGAMY_TOL:
            return m
    return None


def minimal_activation_copies_array(n_one_rest, n_pair, m_max=10_000):
    """
    Vectorized :func:`minimal_activation_copies`; ``0`` marks not found.
    """
    a = np.asarray(n_one_rest, dtype=float).reshape(-1)
    b = np.asarray(n_pair, dtype=float).reshape(a.size, -1)
    out = np.zeros(a.size, dtype=np.int64)
    pending = np.arange(a.size)
    for m in range(1, m_max + 1):
        if pending.size == 0:
            break
        done = multicopy_scores(a[pending], b[pending], m) >= -MONOGAMY_TOL
        out[pending[done]] = m
        pending = pending[~done]
    return out


def _check_three_party(r, s):
    if len(r.n_pair) != 2 or len(s.n_pair) != 2:
        raise ValueError("pair scores need two three-party ScoreParts")


def pair_score_three_party(r, s):
    """Three-party monogamy score of ``rho (x) sigma`` with parties merged pairwise."""
    _check_three_party(r, s)
    return (negativity_product(r.n_one_rest, s.n_one_rest)
            - negativity_product(r.n_pair[0], s.n_pair[0])
            - negativity_product(r.n_pair[1], s.n_pair[1]))


def pair_score_four_party(r, s):
    """
    Four-party score of ``rho (x) sigma``: nodal ``11'``, merged ``33'``, and
    party 2 of ``rho`` and party 2' of ``sigma`` kept as separate parties.
    """
    _check_three_party(r, s)
    return (negativity_product(r.n_one_rest, s.n_one_rest)
            - r.n_pair[0]
            - negativity_product(r.n_pair[1], s.n_pair[1])
            - s.n_pair[0])


def explicit_multicopy_oracle(rho, dims, side_mask, m):
    """
    Negativity of ``rho^{(x) m}`` (``m`` in {1, 2}) from its explicit spectrum.

    ``rho`` may be a stack ``(..., n, n)``; the result is then an array.
    """
    if isinstance(rho, DensityMatrix):
        rho = rho.matrix
    if m not in (1, 2):
        raise ValueError("explicit oracle supports m = 1 or 2")
    if m == 1:
        return negativity(rho, dims, side_mask)
    big = linalg.kron(rho, rho)
    return negativity(big, list(dims) * 2, list(side_mask) * 2, validate=False)


def explicit_product_oracle(rho, sigma, dims, side_mask):
    """Negativity of ``rho (x) sigma`` from its explicit spectrum."""
    big = linalg.kron(rho, sigma)
    return negativity(big, list(dims) * 2, list(side_mask) * 2, validate=False)


def pure_parts_array(amps):
    """
    Score parts with qubit 0 as nodal party for a stack of three-qubit states.

    Returns ``(n_one_rest, n_pair, lam_max)``: ``n_one_rest`` uses the
    single-qubit shortcut, ``n_pair`` has shape ``(B, 2)`` for the pairs
    (0, 1) and (0, 2), and ``lam_max`` ``(B, 3)`` holds the top eigenvalue of
    each single-site reduction.
    """
    amps = np.asarray(amps, dtype=np.complex128).reshape(-1, 8)
    lam = single_site_max_eigenvalues(amps)
    n_rest = np.sqrt(np.clip(lam[:, 0] * (1.0 - lam[:, 0]), 0.0, None))
    t = amps.reshape(-1, 2, 2, 2)
    pairs = np.empty((amps.shape[0], 2))
    # rho_{0j}[i j, l m] with the third qubit traced out; transposing qubit 0
    # swaps i and l.
    rho01 = np.einsum("bijk,blmk->bijlm", t, t.conj())
    rho02 = np.einsum("bikj,blkm->bijlm", t, t.conj())
    for col, r in enumerate((rho01, rho02)):
        pt = r.transpose(0, 3, 2, 1, 4).reshape(-1, 4, 4)
        pairs[:, col] = negativity_from_spectrum(linalg.hermitian_eigenvalues(pt))
    return n_rest, pairs, lam


def score_parts_array(amps, dims, nodal=0):
    """
    Score parts for a stack of pure states ``(B, prod(dims))`` from explicit
    partial transposes.

    Returns ``(n_one_rest, n_pair)`` with ``n_pair`` of shape ``(B, k - 1)``.
    """
    dims = tuple(int(d) for d in dims)
    amps = np.asarray(amps, dtype=np.complex128).reshape(-1, int(np.prod(dims)))
    rho = np.einsum("bi,bj->bij", amps, amps.conj())
    k = len(dims)
    n_rest = negativity(rho, dims, [i == nodal for i in range(k)], validate=False)
    pairs = []
    for i in range(k):
        if i == nodal:
            continue
        keep = sorted((nodal, i))
        red = linalg.partial_trace(rho, dims, keep)
        pairs.append(negativity(red, [dims[j] for j in keep], [j == nodal for j in keep],
                                validate=False))
    return np.asarray(n_rest) + 0.0, np.stack(pairs, axis=-1) + 0.0


def activation_record(psi, m_max=10_000):
    """Per-state summary: one- and two-copy scores, minimal ``m``, class, GGM."""
    from .ggm import ggm

    parts = score_parts(psi)
    return ActivationRecord(
        delta_1=monogamy_score(parts),
        delta_2=monogamy_score_m_copies(parts, 2),
        m_min=minimal_activation_copies(parts, m_max),
        label=classify(psi),
        ggm=ggm(psi).value,
    )
