"""
Generalized geometric measure (GGM) of three-party pure states and the
generalized-GHZ lower boundary in the (monogamy score, GGM) plane.
"""

from dataclasses import dataclass

import numpy as np

from .monogamy import monogamy_score, monogamy_score_m_copies, score_parts
from .states import InvalidStateError, single_site_max_eigenvalues

__all__ = [
    "BOUND_SLACK",
    "GgmValue",
    "PropositionCheck",
    "ggm",
    "gghz_boundary",
    "gghz_boundary_two_copies",
    "proposition_check",
]

BOUND_SLACK = 1e-9
# rounding slack when validating boundary arguments
_RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class GgmValue:
    value: float
    max_eigen_site: int


@dataclass(frozen=True)
class PropositionCheck:
    """
    One state's position relative to the gGHZ boundary.

    ``delta``/``bound``/``holds`` refer to a single copy, the ``*_2`` fields
    to two copies (``bound_2`` is NaN and ``holds_2`` None when the two-copy
    score is negative).
    """

    delta: float
    ggm: float
    bound: float
    nodal_attains_max: bool
    holds: bool
    delta_2: float
    bound_2: float
    holds_2: bool | None


def ggm(psi):
    """``1 - max_i lambda_i^max`` over the three single-site reductions."""
    if psi.num_parties != 3:
        raise InvalidStateError(f"GGM here is defined for three parties, got {psi.num_parties}")
    if psi.dims != (2, 2, 2):
        raise InvalidStateError(f"GGM needs three qubits, got dims {psi.dims}")
    lam = single_site_max_eigenvalues(psi.amplitudes)
    site = int(np.argmax(lam))
    return GgmValue(float(1.0 - lam[site]), site)


def _check_range(x, hi, name):
    x = np.asarray(x, dtype=float)
    if np.any(x < -_RANGE_SLACK) or np.any(x > hi + _RANGE_SLACK) or np.any(np.isnan(x)):
        raise ValueError(f"{name} must lie in [0, {hi}]")
    return np.clip(x, 0.0, hi)


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def gghz_boundary(delta):
    """
    GGM of the gGHZ state whose single-copy score equals ``delta``.

    ``delta = sqrt(a (1 - a))`` with ``a >= 1/2`` inverts to
    ``a = (1 + sqrt(1 - 4 delta^2)) / 2``; the GGM is ``1 - a``.
    """
    d = _check_range(delta, 0.5, "delta")
    return _scalar(1.0 - 0.5 * (1.0 + np.sqrt(np.clip(1.0 - 4.0 * d * d, 0.0, None))))


def gghz_boundary_two_copies(delta2):
    """GGM of the gGHZ state whose two-copy score equals ``delta2``."""
    d2 = _check_range(delta2, 1.5, "delta2")
    # two-copy score of gGHZ is 2 nu (1 + nu) with nu its single-copy score
    nu = np.clip(0.5 * (np.sqrt(1.0 + 2.0 * d2) - 1.0), 0.0, 0.5)
    return _scalar(1.0 - 0.5 * (1.0 + np.sqrt(np.clip(1.0 - 4.0 * nu * nu, 0.0, None))))


def proposition_check(psi):
    """
    Compare the GGM of ``psi`` with the gGHZ boundary at its monogamy score.

    Raises
    ------
    ValueError
        If the single-copy score is negative; the boundary exists only for
        monogamous states.
    """
    parts = score_parts(psi)
    delta = monogamy_score(parts)
    if delta < -BOUND_SLACK:
        raise ValueError(f"boundary undefined for nonmonogamous state (delta = {delta:.3e})")
    lam = single_site_max_eigenvalues(psi.amplitudes)
    g = float(1.0 - lam.max())
    bound = gghz_boundary(max(delta, 0.0))
    delta_2 = monogamy_score_m_copies(parts, 2)
    if delta_2 >= -BOUND_SLACK:
        bound_2 = gghz_boundary_two_copies(max(delta_2, 0.0))
        holds_2 = g >= bound_2 - BOUND_SLACK
    else:
        bound_2, holds_2 = float("nan"), None
    return PropositionCheck(
        delta=delta,
        ggm=g,
        bound=bound,
        nodal_attains_max=bool(lam[0] >= lam.max() - 1e-12),
        holds=bool(g >= bound - BOUND_SLACK),
        delta_2=delta_2,
        bound_2=bound_2,
        holds_2=holds_2,
    )
