"""Exact game solving: retrograde analysis, game numbers, table policies."""

from .backend import compiled_available, resolve_backend
from .core import (
    DEFAULT_BUDGET,
    PURSUER_WIN,
    SURVIVOR_WIN,
    GameNumberResult,
    GameTable,
    Mode,
    TableEvaderPolicy,
    TablePursuerPolicy,
    configured_budget,
    game_number,
    minimax_reference,
    optimal_policies,
    solve_game,
)
from .indexing import (
    advance_multiset,
    multiset_count,
    multiset_rank,
    multiset_unrank,
    state_count,
    state_index,
)

__all__ = [
    "DEFAULT_BUDGET", "PURSUER_WIN", "SURVIVOR_WIN",
    "GameNumberResult", "GameTable", "Mode",
    "TableEvaderPolicy", "TablePursuerPolicy",
    "compiled_available", "configured_budget", "game_number",
    "minimax_reference", "optimal_policies", "resolve_backend", "solve_game",
    "advance_multiset", "multiset_count", "multiset_rank", "multiset_unrank",
    "state_count", "state_index",
]
