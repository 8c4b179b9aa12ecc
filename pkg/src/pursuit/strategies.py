"""Constructive pursuer policies.

Everything here plays the lazy-zombie variant without a solved game table:
two zombies sweeping the boundary circuit of an outerplanar graph (from a
chosen placement or from arbitrary starts), and zombie squads that pin the
containers of a cut decomposition, either vertex by vertex or one clique
at a time.

Where a sweep relies on a structural fact (a circuit step or a chord jump
being a legal zombie move), the policy checks the fact at runtime and
raises StrategyError instead of improvising; a failed run is loud, never
silently wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    CutDecomposition,
    load as decomposition_load,
    minimum_clique_cover,
    validate_cut_decomposition,
)
from .engine import GameState, Turn
from .errors import DecompositionError, StrategyError
from .graphs import Circuit, Graph, all_pairs_distances, outer_circuit

__all__ = [
    "OuterplanarChaseState",
    "OuterplanarSweeper",
    "ZombieAssignment",
    "ContainerOccupationPolicy",
    "CliqueOccupationPolicy",
    "outerplanar_lazy_policy",
    "outerplanar_universal_lazy_policy",
    "cut_decomp_zombie_policy",
    "clique_cover_zombie_policy",
]


@dataclass(frozen=True)
class OuterplanarChaseState:
    """Read-only snapshot of a sweep: phase, per-zombie roles, guarded link,
    and the slots the survivor is currently confined to."""

    phase: str
    roles: tuple[str, str]
    guarded_link: tuple[int, int] | None
    survivor_slots: tuple[int, ...]


@dataclass(frozen=True)
class ZombieAssignment:
    """A zombie pinned to one container vertex or to one cover clique."""

    node: int
    target: int | None = None
    clique: tuple[int, ...] | None = None


def _chase_step(g: Graph, dist, z: int, sv: int, targets=()) -> int:
    """Lowest shortest-path step toward sv, biased toward `targets` if given."""
    cands = [w for w in g.adj[z] if dist[w][sv] == dist[z][sv] - 1]
    if not cands:
        raise StrategyError(f"no shortest-path step from {z} toward {sv}")
    if targets:
        cands.sort(key=lambda w: (min(int(dist[w][t]) for t in targets), w))
    else:
        cands.sort()
    return cands[0]


class _ZombieSquad:
    """Identity bookkeeping shared by every multi-zombie policy.

    GameState stores pursuers as a sorted multiset; these policies need
    stable per-zombie identities, so positions are tracked internally and
    every joint move is emitted in the sorted order the engine expects.
    """

    pos: list[int] | None = None

    def _sync(self, state: GameState) -> None:
        if state.turn is not Turn.PURSUERS:
            raise StrategyError("pursuer policy asked to move on the evader's turn")
        if self.pos is None:
            self.pos = list(state.pursuers)
            self._start()
        elif tuple(sorted(self.pos)) != state.pursuers:
            raise StrategyError("zombie positions desynced from the game state")

    def _start(self) -> None:
        pass

    def _emit(self, new: list[int]) -> tuple[int, ...]:
        order = sorted(range(len(self.pos)), key=lambda i: (self.pos[i], i))
        mv = tuple(new[i] for i in order)
        self.pos = list(new)
        return mv

    def _capture(self, dist, sv: int) -> tuple[int, ...] | None:
        for i, z in enumerate(self.pos):
            if dist[z][sv] == 1:
                new = list(self.pos)
                new[i] = sv
                return self._emit(new)
        return None


class OuterplanarSweeper(_ZombieSquad):
    """Two lazy zombies clearing a connected outerplanar graph.

    Trees fall to a single greedy chaser and cycles to a parked guard plus
    a committed-direction chaser.  Everything else runs on the boundary
    circuit: one zombie stands on a chord (or on a cut vertex, for a null
    chord) sealing the survivor into one side, while the other walks the
    survivor's arc, jumping or re-anchoring whenever a chord into the
    shrinking territory shows up.  Works from arbitrary starting positions,
    so adversarial placements only lengthen the approach.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.c: Circuit = outer_circuit(g)
        if g.n > 1 and g.m == g.n - 1:
            self.mode = "tree"
        elif not self.c.links:
            self.mode = "cycle"
        else:
            self.mode = "circuit"
        self.at_slot: dict[int, list[tuple[int, bool]]] = {}
        for a, b, null in self.c.links:
            self.at_slot.setdefault(a, []).append((b, null))
            self.at_slot.setdefault(b, []).append((a, null))
        self.phase = "seek"
        self.held: list[tuple[int, int, bool] | None] = [None, None]
        self.station = 0
        self.guard: tuple[int, int, bool] | None = None
        self.guard_sign = 0
        self.anchor = self.adv = self.orient = 0
        self.committed: int | None = None
        self.runner_slot = 0
        self._turns = 0
        # loud-failure cap, far above the sub-2n rounds the sweep needs
        self._cap = 40 * (g.n + self.c.length) + 40

    # -- placement ---------------------------------------------------

    def place(self, g: Graph, k: int):
        if k != 2:
            raise StrategyError("this sweep runs with exactly two lazy zombies")
        if self.mode == "tree":
            dist = all_pairs_distances(g)
            ecc = [max(int(x) for x in row) for row in dist]
            center = min(range(g.n), key=lambda v: (ecc[v], v))
            return (center, center)
        if self.mode == "cycle":
            return (0, 0)
        best = None
        for a, b, _null in self.c.links:
            worst = max(len(self._side_vertices(a, b, 1)),
                        len(self._side_vertices(a, b, -1)))
            key = (worst, a, b)
            if best is None or key < best:
                best = key
        v = self.c.vertex(best[1])
        return (v, v)

    # -- circuit geometry --------------------------------------------

    def _links_at_vertex(self, v: int) -> list[tuple[int, int, bool]]:
        out = []
        for s in self.c.slots_of(v):
            for o, null in self.at_slot.get(s, ()):
                out.append((s, o, null))
        return sorted(out)

    def _side_sign(self, p: int, q: int, sv: int) -> int | None:
        """Which open side of link (p, q) holds the survivor; None on an end."""
        c = self.c
        if sv == c.vertex(p) or sv == c.vertex(q):
            return None
        s0 = c.slots_of(sv)[0]
        return 1 if c.in_open_arc(p, q, s0, 1) else -1

    def _side_vertices(self, p: int, q: int, sign: int) -> set[int]:
        c = self.c
        out: set[int] = set()
        s = c.step(p, sign)
        while s != q:
            out.add(c.vertex(s))
            s = c.step(s, sign)
        return out

    def chase_state(self) -> OuterplanarChaseState:
        if self.mode == "tree":
            return OuterplanarChaseState("tree", ("chasing", "parked"), None, ())
        if self.mode == "cycle":
            return OuterplanarChaseState("cycle", ("parked", "chasing"), None, ())
        roles = ["seeking", "seeking"]
        slots: tuple[int, ...] = ()
        link = None
        if self.phase != "seek":
            roles[self.station] = "stationary"
            roles[1 - self.station] = "traveling" if self.phase in ("travel", "cc") else "advancing"
            link = self.guard[:2]
            if self.phase == "advance":
                c, out = self.c, []
                s = c.step(self.anchor, self.orient)
                while s != self.adv:
                    out.append(s)
                    s = c.step(s, self.orient)
                slots = tuple(out)
        return OuterplanarChaseState(self.phase, tuple(roles), link, slots)

    # -- turn dispatch -----------------------------------------------

    def move(self, g: Graph, dist, state: GameState):
        self._sync(state)
        self._turns += 1
        if self._turns > self._cap:
            raise StrategyError("sweep exceeded its move budget without capture")
        sv = state.evader
        cap = self._capture(dist, sv)
        if cap is not None:
            return cap
        if self.mode == "tree":
            return self._tree_turn(g, dist, sv)
        if self.mode == "cycle":
            return self._cycle_turn(g, dist, sv)
        if self.phase == "seek":
            return self._seek_turn(g, dist, sv)
        self._assert_confined(sv)
        if self.phase == "cc":
            return self._cc_turn(g, dist, sv)
        if self.phase == "travel":
            return self._travel_turn(g, dist, sv)
        return self._advance_turn(g, dist, sv)

    def _require(self, ok, why: str) -> None:
        if not ok:
            raise StrategyError(f"sweep invariant failed: {why}")

    def _assert_confined(self, sv: int) -> None:
        p, q, _null = self.guard
        c = self.c
        if sv in (c.vertex(p), c.vertex(q)):
            return  # on the seal itself; capture lands next turn
        self._require(self._side_sign(p, q, sv) == self.guard_sign,
                      "survivor escaped the guarded territory")

    # -- trees and cycles --------------------------------------------

    def _tree_turn(self, g, dist, sv):
        new = list(self.pos)
        new[0] = _chase_step(g, dist, self.pos[0], sv)
        return self._emit(new)

    def _cycle_turn(self, g, dist, sv):
        c = self.c
        z = self.pos[1]
        slot = c.slots_of(z)[0]
        if self.committed is None:
            w = _chase_step(g, dist, z, sv)
            self.committed = 1 if w == c.vertex(c.step(slot, 1)) else -1
        else:
            w = c.vertex(c.step(slot, self.committed))
            if dist[w][sv] != dist[z][sv] - 1:
                self.committed = -self.committed
                w = c.vertex(c.step(slot, self.committed))
                self._require(dist[w][sv] == dist[z][sv] - 1,
                              "no legal step along the cycle")
        new = list(self.pos)
        new[1] = w
        return self._emit(new)

    # -- phase: both zombies look for a chord to hold ------------------

    def _pick_hold(self, v: int, sv: int) -> tuple[int, int, bool]:
        best, best_key = None, None
        for s, o, null in self._links_at_vertex(v):
            sign = self._side_sign(s, o, sv)
            if sign is None:
                continue
            key = (len(self._side_vertices(s, o, sign)), s, o)
            if best_key is None or key < best_key:
                best, best_key = (s, o, null), key
        self._require(best is not None, f"no holdable link at vertex {v}")
        return best

    def _seek_turn(self, g, dist, sv):
        new = list(self.pos)
        for i in (0, 1):
            if self.held[i] is not None:
                continue
            v = self.pos[i]
            if self._links_at_vertex(v):
                self.held[i] = self._pick_hold(v, sv)
            else:
                new[i] = _chase_step(g, dist, v, sv)
        if self.held[0] is not None and self.held[1] is not None:
            return self._resolve_holds(g, dist, sv)
        return self._emit(new)

    def _resolve_holds(self, g, dist, sv):
        h0, h1 = self.held
        if frozenset(h0[:2]) == frozenset(h1[:2]):
            return self._begin_travel(g, dist, sv, station=0, guard=h0)
        sign0 = self._side_sign(h0[0], h0[1], sv)
        sign1 = self._side_sign(h1[0], h1[1], sv)
        self._require(sign0 is not None and sign1 is not None,
                      "survivor sits on a held link at resolution")
        s0 = self._side_vertices(h0[0], h0[1], sign0)
        s1 = self._side_vertices(h1[0], h1[1], sign1)
        if self.pos[1] not in s0:
            return self._begin_travel(g, dist, sv, station=0, guard=h0)
        if self.pos[0] not in s1:
            return self._begin_travel(g, dist, sv, station=1, guard=h1)
        # each zombie is stuck inside the other's survivor side: zombie 0
        # keeps its seal and zombie 1 walks the circuit looking for a link
        # that separates the survivor from the seal
        self.station = 0
        self.guard, self.guard_sign = h0, sign0
        self.phase = "cc"
        self.committed = None
        self.runner_slot = h1[0] if self.c.vertex(h1[0]) == self.pos[1] else h1[1]
        return self._cc_turn(g, dist, sv)

    def _begin_travel(self, g, dist, sv, station: int, guard):
        self.station = station
        self.guard = guard
        sign = self._side_sign(guard[0], guard[1], sv)
        self._require(sign is not None, "survivor sits on the guard being raised")
        self.guard_sign = sign
        self.phase = "travel"
        return self._travel_turn(g, dist, sv)

    # -- phase: the free zombie walks to the guarded link --------------

    def _travel_turn(self, g, dist, sv):
        c = self.c
        p, q, _null = self.guard
        traveler = 1 - self.station
        tv = self.pos[traveler]
        if tv in (c.vertex(p), c.vertex(q)):
            return self._enter_advance(g, dist, sv)
        w = _chase_step(g, dist, tv, sv, targets=(c.vertex(p), c.vertex(q)))
        new = list(self.pos)
        new[traveler] = w
        return self._emit(new)

    def _enter_advance(self, g, dist, sv):
        c = self.c
        p, q, null = self.guard
        sign = self.guard_sign
        traveler = 1 - self.station
        tv = self.pos[traveler]
        if null:
            self.anchor, self.adv, self.orient = p, q, sign
        elif tv == c.vertex(q):
            self.anchor, self.adv, self.orient = p, q, sign
        else:
            self.anchor, self.adv, self.orient = q, p, -sign
        inside = self._side_vertices(p, q, sign)
        ok = any(dist[w][sv] == dist[tv][sv] - 1 and w in inside for w in g.adj[tv])
        if ok:
            self.phase = "advance"
            return self._advance_turn(g, dist, sv)
        # no shortest path dives into the territory from this end, so the
        # approach finishes with one extra move across the link
        self._require(not null, "cut vertex has no shortest path into its component")
        other = c.vertex(self.anchor)
        self._require(dist[other][sv] == dist[tv][sv] - 1,
                      "crossing the guarded link is not a shortest-path move")
        self.anchor, self.adv, self.orient = self.adv, self.anchor, -self.orient
        self.phase = "advance"
        new = list(self.pos)
        new[traveler] = other
        return self._emit(new)

    # -- phase: shrink the survivor's arc ------------------------------

    def _advance_turn(self, g, dist, sv):
        c = self.c
        run = 1 - self.station
        z = self.pos[run]
        self._require(c.vertex(self.adv) == z, "advancing zombie left its slot")
        cands = []
        for s, o, null in self._links_at_vertex(z):
            if c.in_open_arc(self.anchor, self.adv, o, self.orient):
                cands.append((c.arc_len(self.anchor, o, self.orient), o, s, null))
        if not cands:
            nt = c.step(self.adv, -self.orient)
            w = c.vertex(nt)
            self._require(dist[w][sv] == dist[z][sv] - 1,
                          "circuit advance is not a shortest-path move")
            self.adv = nt
            new = list(self.pos)
            new[run] = w
            return self._emit(new)
        _arc, o, s, null = min(cands)
        s0 = c.slots_of(sv)[0]
        if c.in_open_arc(self.anchor, o, s0, self.orient):
            # survivor is on the far side of the link: advance across it
            if null:
                self.adv = o  # same vertex, the territory just shrinks
                return self._emit(list(self.pos))
            w = c.vertex(o)
            self._require(dist[w][sv] == dist[z][sv] - 1,
                          "link jump is not a shortest-path move")
            self.adv = o
            new = list(self.pos)
            new[run] = w
            return self._emit(new)
        # survivor is pinned between this link and the advancing zombie:
        # seal the link here and send the old guard around
        self.guard = (s, o, null)
        sign = self._side_sign(s, o, sv)
        self._require(sign is not None, "survivor sits on the replacement guard")
        self.guard_sign = sign
        self.station = run
        self.phase = "travel"
        return self._travel_turn(g, dist, sv)

    # -- phase: committed walk hunting a separating link ----------------

    def _cc_turn(self, g, dist, sv):
        c = self.c
        run = 1 - self.station
        z = self.pos[run]
        self._require(c.vertex(self.runner_slot) == z, "runner left its slot")
        stn = self.pos[self.station]
        for s, o, null in self._links_at_vertex(z):
            sign = self._side_sign(s, o, sv)
            if sign is None:
                continue
            if stn not in self._side_vertices(s, o, sign):
                self.held = [None, None]
                self.station = run
                self.guard, self.guard_sign = (s, o, null), sign
                self.phase = "travel"
                return self._travel_turn(g, dist, sv)
        moves = []  # (priority, destination, new slot, new committed)
        for s in sorted(c.slots_of(z)):
            at_runner = s == self.runner_slot
            for d0 in (1, -1):
                ns = c.step(s, d0)
                w = c.vertex(ns)
                if dist[w][sv] != dist[z][sv] - 1:
                    continue
                if self.committed is None or d0 == self.committed:
                    prio = 1 if at_runner else 3
                else:
                    prio = 5
                moves.append((prio, w, ns, d0))
            for o, _null in self.at_slot.get(s, ()):
                w = c.vertex(o)
                if w == z or dist[w][sv] != dist[z][sv] - 1:
                    continue
                moves.append((2 if at_runner else 4, w, o, self.committed))
        self._require(bool(moves), "runner has no legal step")
        _p, w, ns, nc = min(moves, key=lambda t: (t[0], t[1], t[2]))
        self.runner_slot, self.committed = ns, nc
        new = list(self.pos)
        new[run] = w
        return self._emit(new)


def outerplanar_lazy_policy(g: Graph) -> OuterplanarSweeper:
    """Two-zombie sweep that picks its own starting vertex."""
    return OuterplanarSweeper(g)


def outerplanar_universal_lazy_policy(g: Graph) -> OuterplanarSweeper:
    """The same sweep, intended for play from imposed starting positions."""
    return OuterplanarSweeper(g)


class ContainerOccupationPolicy(_ZombieSquad):
    """Zombies pin every container between the survivor and the root.

    The survivor's container and all its ancestors get one zombie per
    vertex; a pinned zombie only steps when the move brings it closer to
    both its vertex and the survivor, otherwise it stands still.  Once a
    container is fully occupied the survivor can never cross it, so its
    reachable region shrinks down the decomposition tree.
    """

    def __init__(self, g: Graph, d: CutDecomposition):
        report = validate_cut_decomposition(g, d)
        if not report.ok:
            raise DecompositionError(f"invalid decomposition: {report.reason}")
        self.g, self.d = g, d
        self.k = decomposition_load(d)
        self.node_of: dict[int, int] = {}
        for x, cont in enumerate(d.containers):
            for v in cont:
                self.node_of[v] = x
        self.paths: list[tuple[int, ...]] = []
        for x in range(d.node_count):
            path = []
            y = x
            while y != -1:
                path.append(y)
                y = d.parents[y]
            self.paths.append(tuple(path))
        self.assign: list[ZombieAssignment | None] = [None] * self.k

    def place(self, g: Graph, k: int):
        if k != self.k:
            raise StrategyError(f"strategy needs exactly {self.k} zombies, got {k}")
        return (min(self.d.containers[self.d.root]),) * k

    def assignments(self) -> tuple[ZombieAssignment | None, ...]:
        return tuple(self.assign)

    def move(self, g: Graph, dist, state: GameState):
        self._sync(state)
        sv = state.evader
        cap = self._capture(dist, sv)
        if cap is not None:
            return cap
        needed = set(self.paths[self.node_of[sv]])
        for i, a in enumerate(self.assign):
            if a is not None and a.node not in needed:
                self.assign[i] = None
        covered = {a.target for a in self.assign if a is not None}
        free = [i for i, a in enumerate(self.assign) if a is None]
        for y in reversed(self.paths[self.node_of[sv]]):  # root end first
            for w in self.d.containers[y]:
                if w in covered:
                    continue
                self._require_free(free)
                self.assign[free.pop(0)] = ZombieAssignment(node=y, target=w)
                covered.add(w)
        new = list(self.pos)
        for i, a in enumerate(self.assign):
            if a is None or self.pos[i] == a.target:
                continue
            z = self.pos[i]
            cands = [u for u in g.adj[z]
                     if dist[u][a.target] < dist[z][a.target]
                     and dist[u][sv] < dist[z][sv]]
            if cands:
                new[i] = min(cands)
        return self._emit(new)

    @staticmethod
    def _require_free(free) -> None:
        if not free:
            raise StrategyError("ran out of zombies while pinning containers")


class CliqueOccupationPolicy(_ZombieSquad):
    """Like ContainerOccupationPolicy, but one zombie per cover clique.

    A zombie standing anywhere on its clique blocks the whole clique: any
    survivor visit lands adjacent to it, and the capture follows on the
    next pursuer turn.  Covers may be supplied per node; by default each
    container gets a minimum clique cover of its induced subgraph.
    """

    def __init__(self, g: Graph, d: CutDecomposition, covers=None):
        report = validate_cut_decomposition(g, d)
        if not report.ok:
            raise DecompositionError(f"invalid decomposition: {report.reason}")
        self.g, self.d = g, d
        if covers is None:
            covers = [minimum_clique_cover(g, cont) for cont in d.containers]
        self.covers = tuple(tuple(tuple(K) for K in cov) for cov in covers)
        if len(self.covers) != d.node_count:
            raise DecompositionError("invalid cover: one cover per node required")
        for x, cont in enumerate(d.containers):
            flat = sorted(v for K in self.covers[x] for v in K)
            if flat != sorted(cont):
                raise DecompositionError(
                    f"invalid cover: node {x} is not partitioned by its cliques")
            for K in self.covers[x]:
                for a in K:
                    for b in K:
                        if a < b and b not in g.adj[a]:
                            raise DecompositionError(
                                f"invalid cover: {K} is not a clique")

        def squad(x: int) -> int:
            kids = [y for y in range(d.node_count) if d.parents[y] == x]
            return len(self.covers[x]) + max((squad(y) for y in kids), default=0)

        self.k = squad(d.root)
        self.node_of: dict[int, int] = {}
        for x, cont in enumerate(d.containers):
            for v in cont:
                self.node_of[v] = x
        self.paths: list[tuple[int, ...]] = []
        for x in range(d.node_count):
            path = []
            y = x
            while y != -1:
                path.append(y)
                y = d.parents[y]
            self.paths.append(tuple(path))
        self.assign: list[ZombieAssignment | None] = [None] * self.k

    def place(self, g: Graph, k: int):
        if k != self.k:
            raise StrategyError(f"strategy needs exactly {self.k} zombies, got {k}")
        return (min(self.d.containers[self.d.root]),) * k

    def assignments(self) -> tuple[ZombieAssignment | None, ...]:
        return tuple(self.assign)

    def move(self, g: Graph, dist, state: GameState):
        self._sync(state)
        sv = state.evader
        cap = self._capture(dist, sv)
        if cap is not None:
            return cap
        needed = set(self.paths[self.node_of[sv]])
        for i, a in enumerate(self.assign):
            if a is not None and a.node not in needed:
                self.assign[i] = None
        covered = {(a.node, a.clique) for a in self.assign if a is not None}
        free = [i for i, a in enumerate(self.assign) if a is None]
        for y in reversed(self.paths[self.node_of[sv]]):
            for K in self.covers[y]:
                if (y, K) in covered:
                    continue
                if not free:
                    raise StrategyError("ran out of zombies while pinning cliques")
                self.assign[free.pop(0)] = ZombieAssignment(node=y, clique=K)
                covered.add((y, K))
        new = list(self.pos)
        for i, a in enumerate(self.assign):
            if a is None:
                continue
            z = self.pos[i]
            here = min(int(dist[z][w]) for w in a.clique)
            if here == 0:
                continue  # standing on the clique blocks all of it
            cands = [u for u in g.adj[z]
                     if dist[u][sv] == dist[z][sv] - 1
                     and min(int(dist[u][w]) for w in a.clique) < here]
            if cands:
                new[i] = min(cands)
        return self._emit(new)


def cut_decomp_zombie_policy(g: Graph, d: CutDecomposition) -> ContainerOccupationPolicy:
    """Container-pinning squad; needs load(d) lazy zombies."""
    return ContainerOccupationPolicy(g, d)


def clique_cover_zombie_policy(g: Graph, d: CutDecomposition,
                               covers=None) -> CliqueOccupationPolicy:
    """Clique-pinning squad; needs one lazy zombie per staffed clique."""
    return CliqueOccupationPolicy(g, d, covers)
