"""Entanglement negativity, monogamy scores and their activation for multiqubit states."""

__version__ = "0.1.0"

from .linalg import hermitian_eigenvalues, kron, partial_trace, partial_transpose, trace_norm_hermitian
from .rng import SeededRng
from .states import (
    ClassLabel,
    DensityMatrix,
    GGHZParams,
    InvalidStateError,
    PureState,
    basis_state,
    ghz_state,
    gghz_state,
    haar_random_pure,
    reduced_density,
    sample_ghz_class,
    sample_w_class,
    three_tangle,
    w_state,
)
from .monogamy import (
    ScoreParts,
    explicit_multicopy_oracle,
    explicit_product_oracle,
    minimal_activation_copies,
    monogamy_score,
    monogamy_score_m_copies,
    negativity,
    negativity_m_copies,
    negativity_product,
    pair_score_four_party,
    pair_score_three_party,
    pure_negativity_one_vs_rest,
    score_parts,
)
from .ggm import ggm, gghz_boundary, gghz_boundary_two_copies, proposition_check
