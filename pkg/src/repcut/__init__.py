"""Multiway cut variants with representative demands.

A library for seven cut problems that generalize multiway cut by attaching
candidate sets and separation demands to a weighted graph, together with:

* simplex-embedding LP relaxations and four randomized rounding schemes;
* exact algorithms on trees (gammoid greedy) and a Gomory-Hu based
  2 - 2/q approximation for single-representative separation;
* approximation-preserving reductions between the variants, hitting set,
  and Steiner multicut;
* brute-force oracles for verification at small sizes;
* a command line front end (`repcut`).
"""

from .errors import (
    BudgetExceededError,
    CapExceededError,
    InfeasibleInstanceError,
    InstanceValidationError,
    PreconditionError,
    RepcutError,
    SolverFailureError,
    StructuralError,
)
from .graph import (
    ContractionResult,
    Cut,
    Graph,
    Partition,
    boundary,
    components,
    contract,
    cut_weight,
    dichromatic_edges,
    expand_cut,
)
from .mincut import GomoryHuTree, StCutResult, gh_query, gomory_hu, isolating_cut, min_st_cut
from .lp import LinearProgram, LpSolution, dump_lp_format, solve_lp
from .relax import (
    LIFTED,
    MULTIWAY,
    UML,
    AlignedEmbedding,
    LabelingInstance,
    SimplexEmbedding,
    axis_align,
    build_lift_lp,
    extract_embedding,
    solve_relaxation,
    uniform_labels,
)
from .rounding import (
    COMBINED,
    DESCENDING_THRESHOLDS,
    INDEPENDENT_THRESHOLDS,
    KLEINBERG_TARDOS,
    SINGLE_THRESHOLD,
    DensityEstimate,
    Labeling,
    PiecewiseConstantDensity,
    RoundingParams,
    estimate_cut_density,
    round_combined,
    round_descending_thresholds,
    round_independent_thresholds,
    round_kleinberg_tardos,
    round_single_threshold,
)
from .multiway import RoundedSolveResult, solve_lifted_cut, solve_multiway_cut
from .variants import (
    ALL_TO_ALL,
    FIXED_TO_SINGLE,
    SINGLE_TO_ALL,
    SINGLE_TO_SINGLE,
    SOME_TO_ALL,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    VARIANTS,
    CandidateFamily,
    CutSolution,
    FeasibilityReport,
    RepresentativeChoice,
    VariantInstance,
    Verdict,
    check_feasibility,
    is_good_cut,
    solve_all_to_all,
    solve_fixed_to_single_fixed_q,
    solve_multicut_fixed_terminals,
    solve_single_to_all_2approx,
    solve_single_to_all_fixed_q,
    solve_single_to_single_fixed_q,
    solve_single_to_single_gh,
    solve_single_to_single_tree,
    solve_some_to_all_fixed_q,
    solve_some_to_single_fixed_q,
    solve_some_to_some_fixed_q,
    validate_solution,
)
from .oracle import (
    OracleLimits,
    exact_multicut,
    exact_multiway_cut,
    exact_solve,
    exact_solve_edge_subsets,
    exact_steiner_multicut,
)
from .reductions import (
    HittingSetInstance,
    Reduction,
    SteinerMulticutInstance,
    fixed_to_single_to_some_to_all,
    fixed_to_single_to_some_to_single,
    hitting_set_to_fixed_to_single,
    some_to_some_to_steiner,
    steiner_to_some_to_some,
)

__version__ = "0.1.0"
