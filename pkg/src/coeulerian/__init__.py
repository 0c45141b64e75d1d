"""Chip-firing halting, sandpile groups, and Laplacian lattices of finite
strongly connected directed multigraphs, over exact integer arithmetic."""

from .chipfiring import (
    DIVERGES,
    HALTS,
    UNKNOWN,
    HaltingVerdict,
    apply_firing_vector,
    decide_halting,
    decide_halting_coeulerian,
    extend_with_sink,
    fire,
    is_stable,
    max_stable,
    restrict_to_nonsink,
    stabilize_with_sink,
    verify_halting_certificate,
)
from .graphs import (
    DirectedMultigraph,
    from_adjacency,
    is_strongly_connected,
    laplacian,
    reduced_laplacian,
)
from .intlinalg import (
    HermiteForm,
    SmithForm,
    determinant,
    hermite_normal_form,
    lattice_contains,
    lattice_equal,
    lattice_index,
    smith_normal_form,
)
from .invariants import (
    GraphInvariants,
    cokernel_order,
    compute_invariants,
    is_coeulerian,
    is_directed_cactus,
    is_eulerian,
    pham_index,
    period_vector,
    tree_count_vector,
    ucp_bruteforce,
)
from .lattice import (
    ConstructionTrace,
    ZeroSumLatticeBasis,
    laplacian_from_lattice,
    nonneg_rank_bruteforce,
    reduce_rank_to_halting,
)
from .sandpile import (
    SandpileGroupDesc,
    add_rec,
    beta,
    coset_count,
    gamma,
    gamma_order,
    group_order,
    group_structure,
    identity,
    is_recurrent,
    recurrent_rep,
    same_class_total,
)

__version__ = "0.1.0"
