"""Graph families with unbounded zombie number, plus everyday generators.

The building block is a long induced path from s to t with a slightly longer
cycle grafted onto one path edge near t. A walker circling that cycle outruns
any single shortest-path pursuer, and gluing many such blocks to a shared hub
(a star center, a terminal clique, or a binary tree of connectors) keeps the
whole graph's radius small while no bounded team of zombies can cover every
block. The scripted evader that realizes the escape lives here too.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .engine import GameState
from .errors import GraphError, StrategyError
from .graphs import Graph, all_pairs_distances, build_graph


# ---------------------------------------------------------------- single block

@dataclass(frozen=True)
class ComponentH:
    """One path-plus-cycle block; attach_s/attach_t are the shared edge's ends."""

    graph: Graph
    a_star: int
    s: int
    t: int
    attach_s: int
    attach_t: int
    path: tuple[int, ...]
    cycle: tuple[int, ...]  # the off-path vertices, in cycle order


def _h_layout(a_star: int):
    if a_star < 6 or a_star % 4 != 2:
        raise GraphError("block parameter must be >= 6 and congruent to 2 mod 4")
    q = (a_star + 2) // 4
    hi = a_star + 2 - q      # the shared edge, counted q edges back from t
    lo = hi - 1
    path = tuple(range(a_star + 2))
    cycle = tuple(range(a_star + 2, 2 * a_star + 3))
    edges = [(i, i + 1) for i in range(a_star + 1)]
    edges.append((lo, cycle[0]))
    edges.extend((cycle[i], cycle[i + 1]) for i in range(len(cycle) - 1))
    edges.append((cycle[-1], hi))
    return path, cycle, lo, hi, edges


def component_H(a_star: int) -> ComponentH:
    """Path 0..a*+1 with an (a*+3)-cycle sharing one edge near t."""
    path, cycle, lo, hi, edges = _h_layout(a_star)
    g = build_graph(2 * a_star + 3, edges)
    return ComponentH(g, a_star, 0, a_star + 1, lo, hi, path, cycle)


# ---------------------------------------------------------------- glued instances

@dataclass(frozen=True)
class GkComponent:
    s: int
    t: int
    attach_s: int
    attach_t: int
    path: tuple[int, ...]
    cycle: tuple[int, ...]
    leaf: int | None = None  # tree connector adjacent to s and t, if any

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.path) | frozenset(self.cycle)


@dataclass(frozen=True)
class GkInstance:
    graph: Graph
    kind: str  # star | clique | tree
    k: int
    a_star: int
    components: tuple[GkComponent, ...]
    center: int | None = None
    tree_nodes: tuple[int, ...] = field(default=())

    def sidecar(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "a_star": self.a_star,
            "center": self.center,
            "tree_nodes": list(self.tree_nodes),
            "components": [
                {
                    "s": c.s, "t": c.t,
                    "attach_s": c.attach_s, "attach_t": c.attach_t,
                    "path": list(c.path), "cycle": list(c.cycle),
                    "leaf": c.leaf,
                }
                for c in self.components
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.sidecar())

    @classmethod
    def from_json(cls, text: str) -> "GkInstance":
        obj = json.loads(text)
        maker = {"star": gk_star, "clique": gk_clique}.get(obj["kind"])
        if maker is not None:
            inst = maker(int(obj["k"]), int(obj["a_star"]))
        elif obj["kind"] == "tree":
            inst = gk_tree(int(obj["k"]))
        else:
            raise GraphError(f"unknown instance kind {obj['kind']!r}")
        if inst.sidecar() != obj:
            raise GraphError("instance data does not match its generator")
        return inst


def _copies(k: int, a_star: int):
    if k < 1:
        raise GraphError("need at least one component")
    path, cycle, lo, hi, proto_edges = _h_layout(a_star)
    base = 2 * a_star + 3
    edges: list[tuple[int, int]] = []
    comps: list[GkComponent] = []
    for i in range(k):
        off = i * base
        edges.extend((u + off, v + off) for u, v in proto_edges)
        comps.append(GkComponent(
            s=off, t=off + a_star + 1,
            attach_s=off + lo, attach_t=off + hi,
            path=tuple(v + off for v in path),
            cycle=tuple(v + off for v in cycle)))
    return base, edges, comps


def gk_star(k: int, a_star: int = 10) -> GkInstance:
    """k blocks plus one center adjacent to every s_i and t_i."""
    base, edges, comps = _copies(k, a_star)
    center = k * base
    for c in comps:
        edges.append((c.s, center))
        edges.append((c.t, center))
    g = build_graph(k * base + 1, edges)
    return GkInstance(g, "star", k, a_star, tuple(comps), center=center)


def gk_clique(k: int, a_star: int = 6) -> GkInstance:
    """k blocks with a clique on all the terminals s_i, t_i."""
    base, edges, comps = _copies(k, a_star)
    terminals = [v for c in comps for v in (c.s, c.t)]
    edges.extend((terminals[i], terminals[j])
                 for i in range(len(terminals))
                 for j in range(i + 1, len(terminals)))
    g = build_graph(k * base, edges)
    return GkInstance(g, "clique", k, a_star, tuple(comps))


def gk_tree(k: int) -> GkInstance:
    """k blocks hung off the leaves of a near-complete binary tree.

    The block length grows with k so the tree's extra reach never helps:
    a* = 8*ceil(log2 k) + 10. The connector tree has 2k-1 nodes in heap
    order, hence k leaves and height ceil(log2 k); every vertex keeps
    degree at most three.
    """
    if k < 1:
        raise GraphError("need at least one component")
    height = (k - 1).bit_length()  # ceil(log2 k), exactly
    a_star = 8 * height + 10
    base, edges, comps = _copies(k, a_star)
    first = k * base
    node_count = 2 * k - 1
    nodes = tuple(range(first, first + node_count))
    for j in range(1, node_count):
        edges.append((nodes[(j - 1) // 2], nodes[j]))
    leaves = nodes[k - 1:]
    fixed = []
    for i, c in enumerate(comps):
        edges.append((leaves[i], c.s))
        edges.append((leaves[i], c.t))
        fixed.append(GkComponent(c.s, c.t, c.attach_s, c.attach_t,
                                 c.path, c.cycle, leaf=leaves[i]))
    g = build_graph(first + node_count, edges)
    return GkInstance(g, "tree", k, a_star, tuple(fixed), tree_nodes=nodes)


def free_component(inst: GkInstance, pursuers) -> int | None:
    """Lowest component index holding no pursuer, or None."""
    occupied = set(pursuers)
    for i, c in enumerate(inst.components):
        if not (c.vertices & occupied):
            return i
    return None


# ---------------------------------------------------------------- scripted evader

class ScriptedEvader:
    """Memoryless runner confined to one block.

    Placement is the path vertex adjacent to s. The walk heads along the
    path to the first cycle attachment, enters the cycle toward its
    degree-two neighbour, and then circles forever; from path vertices
    past the attachment it steps back toward it. Position alone fixes
    the move, so the script needs no state across rounds.
    """

    def __init__(self, inst: GkInstance, i: int):
        if not 0 <= i < len(inst.components):
            raise StrategyError(f"no component {i} in a {inst.k}-block instance")
        self.component = inst.components[i]
        self._step = self._build_steps(self.component)

    @staticmethod
    def _build_steps(c: GkComponent) -> dict[int, int]:
        step: dict[int, int] = {}
        lo_at = c.path.index(c.attach_s)
        for j, v in enumerate(c.path):
            if j < lo_at:
                step[v] = c.path[j + 1]
            elif v == c.attach_s:
                step[v] = c.cycle[0]
            elif v == c.attach_t:
                step[v] = c.attach_s
            else:
                step[v] = c.path[j - 1]
        for idx, v in enumerate(c.cycle):
            step[v] = c.cycle[idx + 1] if idx + 1 < len(c.cycle) else c.attach_t
        return step

    def place(self, g: Graph, pursuers) -> int:
        return self.component.path[1]

    def move(self, g: Graph, dist, state: GameState) -> int:
        v = state.evader
        if v not in self._step:
            raise StrategyError(f"evader at {v} is outside its block")
        return self._step[v]


def evasion_policy(inst: GkInstance, i: int) -> ScriptedEvader:
    return ScriptedEvader(inst, i)


# ---------------------------------------------------------------- everyday generators

def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return path_edges(n) + [(n - 1, 0)]


def clique_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def fan_edges(n: int) -> list[tuple[int, int]]:
    """Path on 0..n-2 plus an apex n-1 adjacent to all of it."""
    return path_edges(n - 1) + [(i, n - 1) for i in range(n - 1)]


def random_outerplanar_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Random polygon triangulation with each chord kept on a coin flip."""
    edges = cycle_edges(n)
    chords: list[tuple[int, int]] = []

    def split(i: int, j: int) -> None:
        if j - i < 2:
            return
        m = rng.randrange(i + 1, j)
        if m - i > 1:
            chords.append((i, m))
        if j - m > 1:
            chords.append((m, j))
        split(i, m)
        split(m, j)

    split(0, n - 1)
    edges.extend(ch for ch in chords if rng.random() < 0.5)
    return edges


def random_connected_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    verts = list(range(n))
    rng.shuffle(verts)
    edges = {tuple(sorted((verts[rng.randrange(i)], verts[i])))
             for i in range(1, n)}
    for _ in range(rng.randrange(n)):
        if len(edges) == n * (n - 1) // 2:
            break
        u, v = rng.sample(range(n), 2)
        edges.add(tuple(sorted((u, v))))
    return sorted(edges)


STANDARD_KINDS = ("path", "cycle", "clique", "fan",
                  "rand-outerplanar", "rand-connected")


def standard_graph(kind: str, n: int, seed: int = 0) -> Graph:
    if n < 1:
        raise GraphError("need at least one vertex")
    if kind in ("cycle", "fan") and n < 3:
        raise GraphError(f"{kind} needs at least 3 vertices")
    rng = random.Random(seed)
    if kind == "path":
        return build_graph(n, path_edges(n))
    if kind == "cycle":
        return build_graph(n, cycle_edges(n))
    if kind == "clique":
        return build_graph(n, clique_edges(n))
    if kind == "fan":
        return build_graph(n, fan_edges(n))
    if kind == "rand-outerplanar":
        if n < 3:
            raise GraphError("rand-outerplanar needs at least 3 vertices")
        return build_graph(n, random_outerplanar_edges(n, rng))
    if kind == "rand-connected":
        return build_graph(n, random_connected_edges(n, rng))
    raise GraphError(f"unknown graph kind {kind!r}")


def eccentricity(g: Graph, v: int) -> int:
    return int(all_pairs_distances(g)[v].max())
