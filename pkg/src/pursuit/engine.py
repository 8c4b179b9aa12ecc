"""Turn-by-turn game mechanics for pursuit games on graphs.

Three pursuer kinds share one engine. Cops move to any neighbour or stay.
Zombies must take the first edge of some shortest path to the evader,
judged against the evader's position at the start of the pursuer turn.
Lazy zombies get the zombie moves plus the option to stay put.

Capture is co-location at any instant: a pursuer stepping onto the evader,
the evader stepping onto a pursuer, or the evader placing on a pursuer at
round 0 all end the game.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Callable, Iterable, Protocol, Sequence

from .errors import GameError, IllegalMoveError
from .graphs import Graph, all_pairs_distances


class Variant(Enum):
    COPS = "cops"
    ZOMBIES = "zombies"
    LAZY_ZOMBIES = "lazy-zombies"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        for v in cls:
            if v.value == text:
                return v
        raise GameError(f"unknown variant {text!r}; expected one of "
                        + ", ".join(v.value for v in cls))


class Turn(Enum):
    PURSUERS = "P"
    EVADER = "E"


@dataclass(frozen=True, order=True)
class GameState:
    """Canonical position: pursuer multiset kept sorted, evader, side to move."""

    pursuers: tuple[int, ...]
    evader: int
    turn: Turn = field(compare=True)

    @property
    def captured(self) -> bool:
        return self.evader in self.pursuers


def make_state(pursuers: Iterable[int], evader: int, turn: Turn) -> GameState:
    return GameState(tuple(sorted(pursuers)), evader, turn)


def _require_live_turn(state: GameState, expected: Turn) -> None:
    if state.captured:
        raise GameError("terminal state: evader already caught")
    if state.turn is not expected:
        raise GameError(f"wrong turn: expected {expected.value}, state has {state.turn.value}")


def legal_pursuer_moves(g: Graph, d, state: GameState, idx: int, variant: Variant) -> set[int]:
    """Destinations open to pursuer `idx` on its side's turn.

    Zombie moves are evaluated against the evader position at the start of
    the turn, so a joint move never changes one zombie's options mid-turn.
    """
    _require_live_turn(state, Turn.PURSUERS)
    u = state.pursuers[idx]
    if variant is Variant.COPS:
        return set(g.adj[u]) | {u}
    e = state.evader
    du = int(d[u][e])
    toward = {w for w in g.adj[u] if int(d[w][e]) == du - 1}
    if variant is Variant.LAZY_ZOMBIES:
        toward.add(u)
    return toward


def legal_evader_moves(g: Graph, state: GameState) -> set[int]:
    _require_live_turn(state, Turn.EVADER)
    return set(g.adj[state.evader]) | {state.evader}


def legal_joint_moves(g: Graph, d, state: GameState, variant: Variant) -> list[tuple[int, ...]]:
    """Every joint pursuer move, lexicographically ordered.

    Pursuers sharing a vertex are interchangeable, so for equal positions
    the chosen destinations are constrained nondecreasing; this enumerates
    each resulting multiset exactly once.
    """
    per_slot = [sorted(legal_pursuer_moves(g, d, state, i, variant))
                for i in range(len(state.pursuers))]
    out: list[tuple[int, ...]] = []

    def extend(i: int, prefix: tuple[int, ...]) -> None:
        if i == len(per_slot):
            out.append(prefix)
            return
        same = i > 0 and state.pursuers[i] == state.pursuers[i - 1]
        for w in per_slot[i]:
            if same and w < prefix[-1]:
                continue
            extend(i + 1, prefix + (w,))

    extend(0, ())
    return out


def step(g: Graph, d, state: GameState, move, variant: Variant) -> tuple[GameState, bool]:
    """Apply one side's move; returns the toggled state and a capture flag."""
    if state.turn is Turn.PURSUERS:
        dests = tuple(move)
        if len(dests) != len(state.pursuers):
            raise IllegalMoveError(
                f"joint move has {len(dests)} entries for {len(state.pursuers)} pursuers")
        for i, w in enumerate(dests):
            if w not in legal_pursuer_moves(g, d, state, i, variant):
                raise IllegalMoveError(
                    f"pursuer {i} at {state.pursuers[i]} cannot move to {w}")
        nxt = make_state(dests, state.evader, Turn.EVADER)
        return nxt, nxt.captured
    w = int(move) if not isinstance(move, int) else move
    if w not in legal_evader_moves(g, state):
        raise IllegalMoveError(f"evader at {state.evader} cannot move to {w}")
    nxt = GameState(state.pursuers, w, Turn.PURSUERS)
    return nxt, nxt.captured


class PursuerPolicy(Protocol):
    def place(self, g: Graph, k: int) -> Sequence[int]: ...
    def move(self, g: Graph, d, state: GameState) -> Sequence[int]: ...


class EvaderPolicy(Protocol):
    def place(self, g: Graph, pursuers: Sequence[int]) -> int: ...
    def move(self, g: Graph, d, state: GameState) -> int: ...


@dataclass(frozen=True)
class TraceRow:
    round: int
    mover: str  # "P" or "E"
    positions: tuple[int, ...]
    evader: int
    captured: bool


@dataclass
class Trace:
    """Full record of one match, serializable as JSON lines."""

    variant: Variant
    k: int
    n: int
    pursuer_start: tuple[int, ...]
    evader_start: int
    rows: list[TraceRow] = field(default_factory=list)

    @property
    def captured(self) -> bool:
        if self.evader_start in self.pursuer_start:
            return True
        return bool(self.rows) and self.rows[-1].captured

    @property
    def capture_round(self) -> int | None:
        """Round index of first co-location, 0 for capture at placement."""
        if self.evader_start in self.pursuer_start:
            return 0
        for row in self.rows:
            if row.captured:
                return row.round
        return None

    @property
    def rounds_played(self) -> int:
        return self.rows[-1].round if self.rows else 0

    @property
    def outcome(self) -> str:
        return "CAPTURE" if self.captured else "ROUND_LIMIT"

    def to_jsonl(self) -> str:
        head = {"variant": self.variant.value, "k": self.k, "n": self.n,
                "placements": {"pursuers": list(self.pursuer_start),
                               "evader": self.evader_start}}
        lines = [json.dumps(head)]
        for r in self.rows:
            lines.append(json.dumps({"round": r.round, "mover": r.mover,
                                     "positions": list(r.positions),
                                     "evader": r.evader, "captured": r.captured}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "Trace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GameError("empty trace")
        head = json.loads(lines[0])
        trace = cls(Variant.parse(head["variant"]), int(head["k"]), int(head["n"]),
                    tuple(head["placements"]["pursuers"]),
                    int(head["placements"]["evader"]))
        for ln in lines[1:]:
            rec = json.loads(ln)
            trace.rows.append(TraceRow(int(rec["round"]), rec["mover"],
                                       tuple(rec["positions"]), int(rec["evader"]),
                                       bool(rec["captured"])))
        return trace


def replay_trace(g: Graph, trace: Trace) -> None:
    """Re-run a trace through step(), raising GameError on any divergence."""
    d = all_pairs_distances(g)
    state = make_state(trace.pursuer_start, trace.evader_start, Turn.PURSUERS)
    if state.captured:
        if trace.rows:
            raise GameError("trace continues past capture at placement")
        return
    expected_round, expected_mover = 1, "P"
    for row in trace.rows:
        if (row.round, row.mover) != (expected_round, expected_mover):
            raise GameError(f"trace row out of order at round {row.round} {row.mover}")
        if row.mover == "P":
            # rows store the canonical sorted multiset, which need not be
            # slot-aligned with the sorted sources; recover a legal pairing
            move = None
            for cand in sorted(set(permutations(row.positions))):
                if all(cand[i] in legal_pursuer_moves(g, d, state, i, trace.variant)
                       for i in range(len(cand))):
                    move = cand
                    break
            if move is None:
                raise GameError(
                    f"no legal pursuer pairing reaches {row.positions} at round {row.round}")
        else:
            move = row.evader
        state, captured = step(g, d, state, move, trace.variant)
        if state.pursuers != row.positions or state.evader != row.evader:
            raise GameError(f"replay diverged at round {row.round} {row.mover}")
        if captured != row.captured:
            raise GameError(f"capture flag mismatch at round {row.round} {row.mover}")
        if captured:
            if row is not trace.rows[-1]:
                raise GameError("trace continues past capture")
            return
        if row.mover == "P":
            expected_mover = "E"
        else:
            expected_round, expected_mover = expected_round + 1, "P"


def play_match(g: Graph, variant: Variant, k: int,
               pursuer_policy: PursuerPolicy, evader_policy: EvaderPolicy,
               round_limit: int,
               pursuer_placement: Sequence[int] | None = None) -> Trace:
    """Run one full match: round-0 placement, then alternating turns.

    Pursuers place first (or an external placement is imposed); the evader
    places second with full knowledge. Stops at capture or after
    `round_limit` complete rounds.
    """
    if k < 1:
        raise GameError("need at least one pursuer")
    d = all_pairs_distances(g)
    if pursuer_placement is None:
        placement = tuple(sorted(pursuer_policy.place(g, k)))
    else:
        placement = tuple(sorted(pursuer_placement))
    if len(placement) != k or not all(0 <= p < g.n for p in placement):
        raise IllegalMoveError(f"bad pursuer placement {placement} for k={k}")
    e0 = evader_policy.place(g, placement)
    if not 0 <= e0 < g.n:
        raise IllegalMoveError(f"bad evader placement {e0}")
    trace = Trace(variant, k, g.n, placement, e0)
    state = GameState(placement, e0, Turn.PURSUERS)
    if state.captured:
        return trace
    for rnd in range(1, round_limit + 1):
        joint = tuple(pursuer_policy.move(g, d, state))
        state, captured = step(g, d, state, joint, variant)
        trace.rows.append(TraceRow(rnd, "P", state.pursuers, state.evader, captured))
        if captured:
            return trace
        ev = evader_policy.move(g, d, state)
        state, captured = step(g, d, state, ev, variant)
        trace.rows.append(TraceRow(rnd, "E", state.pursuers, state.evader, captured))
        if captured:
            return trace
    return trace


@dataclass
class FunctionPolicy:
    """Adapter building a policy from plain callables; handy in tests."""

    place_fn: Callable
    move_fn: Callable

    def place(self, g, arg):
        return self.place_fn(g, arg)

    def move(self, g, d, state):
        return self.move_fn(g, d, state)
