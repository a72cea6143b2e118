"""Continuous-time quantum walks on directed graphs.

Directed graphs are mapped to Hermitian operators through a single global
phase: A_H(alpha) = exp(i*alpha) A + exp(-i*alpha) A^T.  A coupling series J
turns A_H into the walk Hamiltonian H = J(A_H) + J(A_H)^T, and the walk is
the Schroedinger evolution exp(-iHt) of a normalized state.  Circulant
graphs get an exact Fourier-diagonal fast path.
"""

from .graphs import (
    Bipartition,
    BlockDecomposition,
    CirculantSpec,
    DirectedGraph,
    bipartition,
    build_moebius_ladder,
    build_ring,
    build_star,
    circulant_block_decomposition,
    moebius_spec,
    read_circulant,
    read_edge_list,
    ring_spec,
    weakly_connected_components,
    write_circulant,
    write_edge_list,
)
from .operators import (
    CouplingSeries,
    EigendecompositionError,
    EigenSystem,
    HermitianOperator,
    apply_coupling,
    assemble_hamiltonian,
    dump_operator,
    hermitian_adjacency,
    hermitian_eigendecomposition,
    load_operator,
    parse_phase,
    reduce_phase,
)
from .spectral import (
    circulant_ah_spectrum,
    circulant_amplitudes,
    circulant_evolution,
    circulant_hamiltonian_spectrum,
    fourier_basis,
)
from .walk import (
    DEFAULT_TIME_GRID,
    NormalizationError,
    TimeGrid,
    WalkResult,
    arrival_time,
    evolve,
    localized_state,
    read_walk_csv,
    run_walk,
    sweep_alpha,
    uniform_state,
    validate_state,
    write_walk_csv,
)
from .closed_forms import (
    ShiftReport,
    StarClosedForm,
    half_pi_spectrum_shift,
    ring_closed_form_support,
    ring_hamiltonian_closed_form,
    star_frequency,
    star_frequency_polynomial,
    star_probability,
    star_probability_field,
)
from .properties import (
    PropertyReport,
    check_bidirected_edge_cancellation,
    check_mirror_symmetries,
    check_stationary_at_half_pi,
    check_transport_suppression,
    random_bipartite_graph,
    random_directed_graph,
    random_polynomial_series,
)
from .cli import write_heatmap_pgm

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
