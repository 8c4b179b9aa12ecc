"""Pursuit games on graphs: zombies, lazy zombies, and cops.

The package exposes four layers: exact game solving (`solve_game`,
`game_number`), match play between pluggable policies (`play_match`),
constructive pursuit strategies with proven guarantees (`strategies`),
and the structural machinery behind them: treedepth, container
decompositions, separator profiles, and polygon visibility graphs.
`verify.run_suite` replays every guarantee end to end.
"""

from .decomposition import (
    CutDecomposition,
    TreedepthTree,
    check_lemma2,
    clique_cover_number,
    cut_decomposition_to_td_tree,
    load,
    load_star,
    minimum_clique_cover,
    random_cut_decomposition,
    random_treedepth_tree,
    separator_profile,
    td_tree_to_cut_decomposition,
    time_bound,
    time_star_bound,
    treedepth,
    treewidth_exact,
    validate_cut_decomposition,
    validate_treedepth_tree,
)
from .engine import (
    GameState,
    Trace,
    Variant,
    legal_evader_moves,
    legal_joint_moves,
    play_match,
    replay_trace,
    step,
)
from .errors import (
    BudgetExceededError,
    DecompositionError,
    DisconnectedError,
    GameError,
    GraphError,
    IllegalMoveError,
    NotOuterplanarError,
    PolygonError,
    PursuitError,
    StrategyError,
    TooLargeError,
)
from .families import (
    GkInstance,
    ScriptedEvader,
    evasion_policy,
    free_component,
    gk_clique,
    gk_star,
    gk_tree,
    standard_graph,
)
from .geometry import (
    Point,
    Polygon,
    build_polygon,
    point_in_polygon,
    random_simple_polygon,
    validate_simple_polygon,
    visibility_graph,
)
from .graphs import Graph, build_graph, diameter, is_connected, load_graph, save_graph
from .solver import (
    GameNumberResult,
    GameTable,
    Mode,
    TableEvaderPolicy,
    TablePursuerPolicy,
    compiled_available,
    game_number,
    minimax_reference,
    optimal_policies,
    solve_game,
)
from .strategies import (
    clique_cover_zombie_policy,
    cut_decomp_zombie_policy,
    outerplanar_lazy_policy,
    outerplanar_universal_lazy_policy,
)
from .verify import run_check, run_suite, suite_ids

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CutDecomposition",
    "DecompositionError",
    "DisconnectedError",
    "GameError",
    "GameNumberResult",
    "GameState",
    "GameTable",
    "GkInstance",
    "Graph",
    "GraphError",
    "IllegalMoveError",
    "Mode",
    "NotOuterplanarError",
    "Point",
    "Polygon",
    "PolygonError",
    "PursuitError",
    "ScriptedEvader",
    "StrategyError",
    "TableEvaderPolicy",
    "TablePursuerPolicy",
    "TooLargeError",
    "Trace",
    "TreedepthTree",
    "Variant",
    "build_graph",
    "build_polygon",
    "check_lemma2",
    "clique_cover_number",
    "clique_cover_zombie_policy",
    "compiled_available",
    "cut_decomp_zombie_policy",
    "cut_decomposition_to_td_tree",
    "diameter",
    "evasion_policy",
    "free_component",
    "game_number",
    "gk_clique",
    "gk_star",
    "gk_tree",
    "is_connected",
    "legal_evader_moves",
    "legal_joint_moves",
    "load",
    "load_graph",
    "load_star",
    "minimax_reference",
    "minimum_clique_cover",
    "optimal_policies",
    "outerplanar_lazy_policy",
    "outerplanar_universal_lazy_policy",
    "play_match",
    "point_in_polygon",
    "random_cut_decomposition",
    "random_simple_polygon",
    "random_treedepth_tree",
    "replay_trace",
    "run_check",
    "run_suite",
    "save_graph",
    "separator_profile",
    "solve_game",
    "standard_graph",
    "step",
    "suite_ids",
    "td_tree_to_cut_decomposition",
    "time_bound",
    "time_star_bound",
    "treedepth",
    "treewidth_exact",
    "validate_cut_decomposition",
    "validate_simple_polygon",
    "validate_treedepth_tree",
    "visibility_graph",
    "__version__",
]
