"""Exact solving of pursuit games by retrograde analysis.

solve_game labels every canonical state of a k-pursuer game as a pursuer
win (with its minimax capture time in plies) or a survivor win; draws by
infinite evasion count for the survivor. game_number searches for the
smallest sufficient k under either placement rule, and optimal_policies
turns a finished table into playable engine policies.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from ..engine import (
    GameState,
    Turn,
    Variant,
    legal_evader_moves,
    legal_joint_moves,
    make_state,
)
from ..errors import BudgetExceededError, DisconnectedError, GameError
from ..graphs import Graph, all_pairs_distances, is_connected
from .backend import resolve_backend
from .indexing import multiset_count, multiset_rank, multiset_unrank, state_count

DEFAULT_BUDGET = 50_000_000
PURSUER_WIN = "PURSUER_WIN"
SURVIVOR_WIN = "SURVIVOR_WIN"

_VARIANT_CODE = {Variant.COPS: 0, Variant.ZOMBIES: 1, Variant.LAZY_ZOMBIES: 2}


class Mode(Enum):
    CHOSEN = "chosen"
    ADVERSARIAL = "adversarial"


def configured_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("PURSUIT_STATE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class GameTable:
    """Complete labeling of one (graph, variant, k) game."""

    graph: Graph
    variant: Variant
    k: int
    status: np.ndarray  # uint8 per state, 1 = pursuer win
    times: np.ndarray  # int32 minimax plies, -1 for survivor wins
    backend: str
    edges: int

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def placement_count(self) -> int:
        return multiset_count(self.n, self.k)

    def state_index(self, state: GameState) -> int:
        r = multiset_rank(state.pursuers)
        turn = 0 if state.turn is Turn.PURSUERS else 1
        return (r * self.n + state.evader) * 2 + turn

    def label(self, state: GameState) -> str:
        return PURSUER_WIN if self.status[self.state_index(state)] else SURVIVOR_WIN

    def time_plies(self, state: GameState) -> int:
        """Minimax capture time in single moves; -1 for survivor wins."""
        return int(self.times[self.state_index(state)])

    def capture_rounds(self, state: GameState) -> int:
        """Minimax capture time in rounds (a round = pursuer move + evader move)."""
        t = self.time_plies(state)
        if t < 0:
            raise GameError("survivor wins from this state")
        return 0 if t == 0 else 1 + (t - 1) // 2

    def placement_wins(self, rank: int) -> bool:
        """True when this pursuer placement beats every survivor placement."""
        base = rank * self.n * 2
        return bool(self.status[base:base + 2 * self.n:2].all())

    def winning_placements(self):
        """Yield winning pursuer placements in canonical (colex) order."""
        for r in range(self.placement_count):
            if self.placement_wins(r):
                yield multiset_unrank(r, self.k)

    def first_winning_placement(self) -> tuple[int, ...] | None:
        return next(self.winning_placements(), None)

    def all_placements_win(self) -> bool:
        return all(self.placement_wins(r) for r in range(self.placement_count))

    def summary(self) -> dict:
        win = int(self.status.sum())
        winners = sum(self.placement_wins(r) for r in range(self.placement_count))
        first = self.first_winning_placement()
        return {
            "variant": self.variant.value,
            "k": self.k,
            "n": self.n,
            "states": int(self.status.size),
            "edges": self.edges,
            "pursuer_win_states": win,
            "survivor_win_states": int(self.status.size - win),
            "winning_placements": int(winners),
            "placements": self.placement_count,
            "first_winning_placement": list(first) if first is not None else None,
            "max_capture_plies": int(self.times.max()),
            "backend": self.backend,
        }


def solve_game(g: Graph, variant: Variant, k: int,
               budget: int | None = None, backend: str | None = None) -> GameTable:
    """Retrograde analysis of the full state space; deterministic."""
    if k < 1:
        raise GameError("need at least one pursuer")
    if not is_connected(g):
        raise DisconnectedError("solver requires a connected graph")
    budget = configured_budget(budget)
    S = state_count(g.n, k)
    if S > budget:
        raise BudgetExceededError(
            f"{S} states exceed budget {budget}; raise PURSUIT_STATE_BUDGET to override")
    name, kernel = resolve_backend(backend)
    dist = all_pairs_distances(g)
    out = kernel.solve_kernel(g.n, k, g.adj, dist, _VARIANT_CODE[variant], budget)
    if out is None:
        raise BudgetExceededError(
            f"state-edge budget {budget} exceeded while expanding moves; "
            "raise PURSUIT_STATE_BUDGET to override")
    status, times, edges = out
    return GameTable(g, variant, k,
                     np.asarray(status, dtype=np.uint8),
                     np.asarray(times, dtype=np.int32),
                     name, int(edges))


@dataclass
class GameNumberResult:
    """Smallest sufficient pursuer count under one placement rule."""

    variant: Variant
    mode: Mode
    k_max: int
    value: int | None
    witness: dict | None = None

    @property
    def found(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.found else f"NONE_UP_TO({self.k_max})"

    def to_json(self) -> dict:
        return {"variant": self.variant.value, "mode": self.mode.value,
                "k_max": self.k_max, "value": self.value,
                "display": str(self), "witness": self.witness}


def game_number(g: Graph, variant: Variant, mode: Mode, k_max: int,
                budget: int | None = None, backend: str | None = None) -> GameNumberResult:
    """Smallest k <= k_max winning for the pursuers under the given mode.

    CHOSEN: some pursuer placement beats every survivor placement.
    ADVERSARIAL: every pursuer placement beats every survivor placement.
    """
    if k_max < 1:
        raise GameError("k_max must be at least 1")
    witness = None
    for k in range(1, k_max + 1):
        t = solve_game(g, variant, k, budget=budget, backend=backend)
        if mode is Mode.CHOSEN:
            p = t.first_winning_placement()
            if p is not None:
                return GameNumberResult(variant, mode, k_max, k,
                                        {"k": k, "placement": list(p)})
            if k == k_max:
                p0 = multiset_unrank(0, k)
                e0 = next(v for v in range(g.n)
                          if not t.status[(0 * g.n + v) * 2])
                witness = {"k": k, "placement": list(p0), "evader": e0,
                           "note": "every placement admits an escaping survivor"}
        else:
            bad = next((r for r in range(t.placement_count)
                        if not t.placement_wins(r)), None)
            if bad is None:
                return GameNumberResult(variant, mode, k_max, k, {"k": k})
            if k == k_max:
                p = multiset_unrank(bad, k)
                e0 = next(v for v in range(g.n)
                          if not t.status[(bad * g.n + v) * 2])
                witness = {"k": k, "placement": list(p), "evader": e0}
    return GameNumberResult(variant, mode, k_max, None, witness)


class TablePursuerPolicy:
    """Plays the table: decrease remaining capture time whenever winning."""

    def __init__(self, table: GameTable):
        self.table = table

    def place(self, g: Graph, k: int):
        if k != self.table.k:
            raise GameError(f"table was solved for k={self.table.k}")
        p = self.table.first_winning_placement()
        return p if p is not None else multiset_unrank(0, k)

    def move(self, g: Graph, d, state: GameState):
        t = self.table
        s = t.state_index(state)
        moves = legal_joint_moves(g, d, state, t.variant)
        if t.status[s]:
            want = int(t.times[s]) - 1
            for c in moves:
                r = multiset_rank(tuple(sorted(c)))
                dest = (r * t.n + state.evader) * 2 + 1
                if t.status[dest] and int(t.times[dest]) == want:
                    return c
            raise GameError("inconsistent table: no time-decreasing move")
        return moves[0]


class TableEvaderPolicy:
    """Plays the table: stay in survivor-win states, else maximize time."""

    def __init__(self, table: GameTable):
        self.table = table

    def place(self, g: Graph, pursuers):
        t = self.table
        r = multiset_rank(tuple(sorted(pursuers)))
        best_v, best_t = 0, -2
        for v in range(t.n):
            s = (r * t.n + v) * 2
            if not t.status[s]:
                return v
            if int(t.times[s]) > best_t:
                best_v, best_t = v, int(t.times[s])
        return best_v

    def move(self, g: Graph, d, state: GameState):
        t = self.table
        r = multiset_rank(state.pursuers)
        best_w, best_t = None, -2
        for w in sorted(legal_evader_moves(g, state)):
            s = (r * t.n + w) * 2
            if not t.status[s]:
                return w
            if int(t.times[s]) > best_t:
                best_w, best_t = w, int(t.times[s])
        return best_w


def optimal_policies(table: GameTable) -> tuple[TablePursuerPolicy, TableEvaderPolicy]:
    return TablePursuerPolicy(table), TableEvaderPolicy(table)


def minimax_reference(g: Graph, variant: Variant, k: int):
    """Depth-bounded explicit minimax; independent oracle for solve_game.

    Returns (status, times) arrays in table layout. Exponential-ish memo,
    intended for tiny instances only.
    """
    n = g.n
    d = all_pairs_distances(g)
    S = state_count(n, k)
    depth_cap = 2 * S + 1
    INF = float("inf")

    @lru_cache(maxsize=None)
    def val(pursuers: tuple, evader: int, turn: int, depth: int):
        if evader in pursuers:
            return 0
        if depth == 0:
            return INF
        if turn == 0:
            state = GameState(pursuers, evader, Turn.PURSUERS)
            best = INF
            for c in legal_joint_moves(g, d, state, variant):
                best = min(best, val(tuple(sorted(c)), evader, 1, depth - 1))
            return best + 1
        state = GameState(pursuers, evader, Turn.EVADER)
        worst = 0
        for w in sorted(legal_evader_moves(g, state)):
            worst = max(worst, val(pursuers, w, 0, depth - 1))
            if worst == INF:
                break
        return worst + 1

    status = np.zeros(S, dtype=np.uint8)
    times = np.full(S, -1, dtype=np.int32)
    for r in range(multiset_count(n, k)):
        p = multiset_unrank(r, k)
        for e in range(n):
            for turn in (0, 1):
                v = val(p, e, turn, depth_cap)
                idx = (r * n + e) * 2 + turn
                if v != INF:
                    status[idx] = 1
                    times[idx] = int(v)
    val.cache_clear()
    return status, times
