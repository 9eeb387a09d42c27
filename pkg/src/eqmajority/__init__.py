"""Laboratory for the equality-comparison majority problem.

An array of 2n values holds n+1 distinct values, one repeated n times.
This package implements the optimal n+2-comparison algorithm, the
layer-flipping adversary that defeats any algorithm using at most n+1
comparisons, graph certificates for the ambiguity argument, an exhaustive
minimax verifier confirming the exact n+2 bound at small n, and a game
server for playing either side interactively.
"""

from .adversary import (
    AdversaryState,
    PHASE_AMBIGUOUS,
    PHASE_COMMITTED,
    defeat_check,
    extract_witness,
    new_adversary,
    respond,
)
from .arena import (
    DuelReport,
    StressReport,
    SweepReport,
    adversary_stress,
    exhaustive_sweep,
    run_vs_adversary,
    run_vs_instance,
    verify_transcript,
)
from .bounds import (
    DecisionTree,
    GameValueReport,
    NodeBudgetExceeded,
    canonical_key,
    game_value,
    game_value_report,
    optimal_tree,
    reference_game_value,
)
from .graphs import (
    AmbiguityCertificate,
    CERT_NONE,
    CERT_ONE_LARGER,
    CERT_TWO_DISJOINT,
    CoverResult,
    InequalityGraph,
    LayerAssignment,
    ambiguity_certificate,
    balanced_crossing_split,
    cover_bound,
    edges_form_matching,
    is_complement_clique,
    is_perfect_matching,
    large_complement_clique,
    make_graph,
    minimum_vertex_cover,
)
from .model import (
    Answer,
    ClaimedOutput,
    ContradictionError,
    EQUAL,
    Instance,
    InvalidInstanceError,
    InvalidQueryError,
    KnowledgeState,
    NOT_EQUAL,
    QueryRecord,
    Transcript,
    VERDICT_CORRECT,
    VERDICT_UNRESOLVED,
    VERDICT_WRONG,
    all_majority_sets,
    apply_answer,
    canonical_instance,
    empty_knowledge,
    feasible_majority_sets,
    knowledge_from_answers,
    oracle_answer,
    safe_outputs,
)
from .strategies import (
    all_pairs_strategy,
    make_strategy,
    optimal_strategy,
    randomized_pairs_strategy,
    scripted_strategy,
)

__version__ = "0.1.0"
