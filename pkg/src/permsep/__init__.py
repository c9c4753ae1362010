"""k-neighbor separated permutation families: constructions, verification,
counting bounds, and exact small-case solving."""

from .bounds import (
    BoundValue,
    Coloring,
    ExactCell,
    bollobas_bound,
    color_ground_set,
    coloring_count_bound,
    coloring_exponent,
    entropy,
    exact_formulas,
    tuza_bound,
)
from .constructions import (
    DegreeGraph,
    FamilyTooLarge,
    Pow2Stats,
    StripParams,
    balanced_family,
    degree_graph,
    fixed_edge_family,
    ham_cover,
    ham_decomposition,
    pad_to_width,
    pnn_family,
    pow2_family,
    pow2_stats,
    strip_family,
    three_matchings,
)
from .labelled import (
    Grid,
    LabelledGraph,
    LabelledHCycle,
    compatible,
    hcycle_from_perm,
    pairwise_compatible,
    perm_from_hcycle,
    unit_grid,
    z_swap,
    z_swap_all,
)
from .merging import (
    FamilyStats,
    MergePlan,
    a_sequence,
    adjoin,
    complete_width_double,
    family_stats,
    multiple_merge,
    multiple_merge_family,
    rotate_down,
    width_double,
    width_double_profile,
)
from .perms import (
    FamilyReport,
    SetPair,
    as_permutation,
    is_k_separated,
    neighbor_pairs,
    product_family,
    separated_pairs,
    to_set_pair,
    union_contains_odd_cycle,
    verify_family,
    weakly_cross_intersecting,
)
from .solver import (
    CliqueResult,
    CompatibilityGraph,
    build_graph,
    max_clique,
    p_table,
    witness_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
