"""Quantum-uncertainty measures for density matrices.

Spectral linear algebra, validated states, orthonormal observable bases,
the observable-averaged uncertainty measures with their comparison
entropies, and an executable property suite behind a small CLI.
"""

from .linalg import (
    EigenDecomposition,
    EigensolverError,
    NotPositiveSemidefiniteError,
    eig_hermitian,
    hermitize,
    matrix_power,
    partial_trace,
    random_ginibre_density,
    random_observable,
    random_orthogonal,
    random_unitary,
    tensor,
    trace,
    trace_product,
    trace_quad,
)
from .measures import (
    DEGENERATE,
    BracketError,
    EntropySummary,
    MeasureReport,
    bz_information,
    critical_alpha,
    delta,
    entropies,
    luo_uncertainty,
    measure_report,
    purity,
    q_alpha,
    q_alpha_pair_sum,
    q_alpha_via_basis_sum,
    q_star,
    q_star_quadrature,
    renyi_entropy,
    tsallis_entropy,
    variance,
    von_neumann_entropy,
    wyd_cross_term,
    wyd_info,
    wyd_info_commutator,
    wyd_info_spectral,
)
from .observables import (
    ObservableBasis,
    as_observable,
    commutator,
    commutes,
    load_observable,
    rotate_basis,
    standard_basis,
)
from .properties import PropertyLedger, PropertyResult, check_properties
from .states import (
    DensityMatrix,
    StateFormatError,
    ValidationError,
    hansen,
    hansen_unnormalized,
    load_state,
    maximally_mixed,
    pure,
    random_density,
    save_state,
    validate,
    werner,
)

__version__ = "0.1.0"
