"""Graph core: construction, IO, distances, block structure, outer circuit.

Graphs are undirected, simple, with dense vertex ids 0..n-1. The distance
matrix is a numpy int32 array with -1 marking unreachable pairs. The outer
circuit is the closed boundary walk of an outerplanar graph: cut vertices
appear once per incident block, bridges are walked twice, and the non-walk
edges become chords on the circle of walk slots.
"""

from __future__ import annotations

import json
import sys
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DisconnectedError, GraphError, NotOuterplanarError

UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    Attributes:
        n: number of vertices (ids 0..n-1).
        edges: sorted tuple of (u, v) pairs with u < v.
        adj: per-vertex sorted neighbor tuples.
        labels: optional display names; ignored for equality.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...]
    labels: dict[int, str] | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adj[u]
        i = bisect_left(row, v)
        return i < len(row) and row[i] == v

    def to_json(self) -> dict:
        data: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels:
            data["labels"] = {str(v): name for v, name in sorted(self.labels.items())}
        return data

    @staticmethod
    def from_json(data: dict) -> "Graph":
        if not isinstance(data, dict) or "n" not in data:
            raise GraphError("graph JSON must be an object with an 'n' field")
        labels = None
        if data.get("labels"):
            try:
                labels = {int(k): str(v) for k, v in data["labels"].items()}
            except (TypeError, ValueError) as exc:
                raise GraphError(f"bad label map: {exc}") from None
        return build_graph(data["n"], data.get("edges", []), labels=labels)


def build_graph(n: int, edge_list, labels: dict[int, str] | None = None) -> Graph:
    """Validate and canonicalize a graph.

    Rejects out-of-range endpoints, self-loops, and duplicate edges.
    """
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    seen: set[tuple[int, int]] = set()
    adj_sets: list[set[int]] = [set() for _ in range(n)]
    for pair in edge_list:
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise GraphError(f"edge endpoints must be integers, got {pair!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) has an endpoint out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphError(f"duplicate edge ({e[0]},{e[1]})")
        seen.add(e)
        adj_sets[u].add(v)
        adj_sets[v].add(u)
    if labels is not None:
        for v in labels:
            if not (0 <= v < n):
                raise GraphError(f"label for unknown vertex {v}")
    return Graph(
        n=n,
        edges=tuple(sorted(seen)),
        adj=tuple(tuple(sorted(s)) for s in adj_sets),
        labels=dict(labels) if labels else None,
    )


def loads_graph(text: str) -> Graph:
    """Parse a graph from JSON or plain edge-list text (first line "n m")."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Graph.from_json(json.loads(text))
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError("edge-list text must start with a line 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError("edge-list header is not two integers") from None
    if m != len(lines) - 1:
        raise GraphError(f"header declares {m} edges but {len(lines) - 1} lines follow")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_graph(fh.read())


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(g.to_json(), fh, sort_keys=True, indent=1)
        fh.write("\n")


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Exact BFS hop distances; dist[u][v] = -1 when unreachable."""
    dm = np.full((g.n, g.n), UNREACHABLE, dtype=np.int32)
    for src in range(g.n):
        row = dm[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            du = row[u]
            for w in g.adj[u]:
                if row[w] < 0:
                    row[w] = du + 1
                    queue.append(w)
    return dm


def is_connected(g: Graph) -> bool:
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                queue.append(w)
    return count == g.n


def diameter(g: Graph, dm: np.ndarray | None = None) -> int:
    """Max pairwise distance of a connected graph."""
    if dm is None:
        dm = all_pairs_distances(g)
    if (dm < 0).any():
        raise DisconnectedError("diameter requires a connected graph")
    return int(dm.max())


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for forests.

    Uses the edge-removal characterization: every shortest cycle through an
    edge (u,v) is that edge plus a shortest u-v path avoiding it.
    """
    best: int | None = None
    for u, v in g.edges:
        # BFS from u to v skipping the edge (u, v) itself
        dist = [-1] * g.n
        dist[u] = 0
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for w in g.adj[x]:
                if dist[w] < 0 and not (x == u and w == v):
                    dist[w] = dist[x] + 1
                    queue.append(w)
        if dist[v] >= 0 and (best is None or dist[v] + 1 < best):
            best = dist[v] + 1
    return best


def blocks_and_cut_vertices(g: Graph) -> tuple[list[tuple[int, ...]], frozenset[int]]:
    """Biconnected blocks (bridges are 2-vertex blocks) and cut vertices.

    Blocks are returned as sorted vertex tuples, sorted among themselves.
    Since two blocks share at most one vertex, an edge's block is the unique
    block containing both endpoints.
    """
    if not is_connected(g):
        raise DisconnectedError("block decomposition requires a connected graph")
    n = g.n
    if n == 1:
        return [], frozenset()
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cuts: set[int] = set()
    blocks: list[tuple[int, ...]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    root = 0
    root_children = 0
    # iterative DFS: stack of (vertex, index into adj row)
    disc[root] = low[root] = timer
    timer += 1
    stack = [(root, 0)]
    while stack:
        v, i = stack[-1]
        if i < len(g.adj[v]):
            stack[-1] = (v, i + 1)
            w = g.adj[v][i]
            if disc[w] < 0:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                edge_stack.append((v, w))
                stack.append((w, 0))
                if v == root:
                    root_children += 1
            elif w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        else:
            stack.pop()
            if not stack:
                break
            p = stack[-1][0]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                # (p, v) closes a block
                verts: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    verts.add(a)
                    verts.add(b)
                    if (a, b) == (p, v):
                        break
                blocks.append(tuple(sorted(verts)))
                if p != root:
                    cuts.add(p)
    if root_children >= 2:
        cuts.add(root)
    blocks.sort()
    return blocks, frozenset(cuts)


@dataclass(frozen=True)
class Circuit:
    """Closed boundary walk of an outerplanar graph, plus its chord diagram.

    walk[i] is the vertex at slot i; slot i steps to slot (i+1) mod L along
    an edge. Chords and null chords are stored as sorted slot pairs. A null
    chord joins two circuit appearances of one cut vertex.
    """

    walk: tuple[int, ...]
    chords: tuple[tuple[int, int], ...]
    null_chords: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.walk)

    def vertex(self, slot: int) -> int:
        return self.walk[slot % len(self.walk)]

    @cached_property
    def _slots_by_vertex(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, v in enumerate(self.walk):
            out.setdefault(v, []).append(i)
        return {v: tuple(s) for v, s in out.items()}

    def slots_of(self, v: int) -> tuple[int, ...]:
        return self._slots_by_vertex.get(v, ())

    @cached_property
    def links(self) -> tuple[tuple[int, int, bool], ...]:
        """Chords and null chords together: (slot_a, slot_b, is_null)."""
        out = [(a, b, False) for a, b in self.chords]
        out += [(a, b, True) for a, b in self.null_chords]
        out.sort()
        return tuple(out)

    def step(self, slot: int, direction: int) -> int:
        return (slot + direction) % len(self.walk)

    def arc_len(self, a: int, b: int, direction: int = 1) -> int:
        """Number of slot steps from a to b walking in the given direction."""
        return ((b - a) * direction) % len(self.walk)

    def in_open_arc(self, a: int, b: int, x: int, direction: int = 1) -> bool:
        """True when slot x lies strictly between a and b along direction."""
        return 0 < self.arc_len(a, x, direction) < self.arc_len(a, b, direction)


def _hamiltonian_cycle(g: Graph, verts: tuple[int, ...], node_cap: int = 500_000) -> list[int] | None:
    """First Hamiltonian cycle of the induced subgraph on verts, or None.

    Starts at the smallest vertex, tries neighbors in ascending order. The
    caller certifies outerplanarity afterwards, so uniqueness of the cycle is
    not needed here.
    """
    vset = set(verts)
    nbrs = {v: [w for w in g.adj[v] if w in vset] for v in verts}
    start = verts[0]
    size = len(verts)
    path = [start]
    used = {start}
    iters = [iter(nbrs[start])]
    nodes = 0
    while iters:
        nodes += 1
        if nodes > node_cap:
            raise NotOuterplanarError("outer cycle search limit exceeded")
        advanced = False
        for w in iters[-1]:
            if w in used:
                continue
            path.append(w)
            used.add(w)
            if len(path) == size:
                if start in nbrs[w]:
                    cycle = list(path)
                    if len(cycle) > 2 and cycle[1] > cycle[-1]:
                        cycle = [cycle[0]] + cycle[:0:-1]
                    return cycle
                path.pop()
                used.remove(w)
                continue
            iters.append(iter(nbrs[w]))
            advanced = True
            break
        if not advanced:
            iters.pop()
            used.remove(path.pop()) if len(path) > 1 else path.pop()
    return None


def outer_circuit(g: Graph) -> Circuit:
    """Boundary walk + chords of a connected outerplanar graph.

    Raises NotOuterplanarError when the edge count exceeds 2n-3, when some
    2-connected block has no spanning cycle, or when the resulting chord
    diagram has crossing links.
    """
    if g.n == 1:
        if not is_connected(g):  # pragma: no cover - single vertex is connected
            raise DisconnectedError("outer circuit requires a connected graph")
        return Circuit((0,), (), ())
    if g.m > 2 * g.n - 3:
        raise NotOuterplanarError(f"{g.m} edges exceed the outerplanar bound {2 * g.n - 3}")
    blocks, _cuts = blocks_and_cut_vertices(g)
    vert_blocks: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for bid, b in enumerate(blocks):
        for v in b:
            vert_blocks[v].append(bid)
    cycles: dict[int, list[int]] = {}
    for bid, b in enumerate(blocks):
        if len(b) > 2:
            cyc = _hamiltonian_cycle(g, b)
            if cyc is None:
                raise NotOuterplanarError("a 2-connected block has no spanning cycle")
            cycles[bid] = cyc

    walk: list[int] = []
    block_slot: dict[tuple[int, int], int] = {}

    limit = max(sys.getrecursionlimit(), 6 * g.n + 200)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(limit)

    def visit(v: int, from_bid: int | None) -> None:
        slot = len(walk)
        walk.append(v)
        if from_bid is not None:
            block_slot[(from_bid, v)] = slot
        for bid in vert_blocks[v]:
            if bid != from_bid:
                _loop(bid, v)

    def _loop(bid: int, entry: int) -> None:
        # the caller has just emitted `entry`; its slot anchors this block
        block_slot[(bid, entry)] = len(walk) - 1
        b = blocks[bid]
        if len(b) == 2:
            other = b[0] if b[1] == entry else b[1]
            visit(other, bid)
            walk.append(entry)
            return
        cyc = cycles[bid]
        k = cyc.index(entry)
        order = cyc[k:] + cyc[:k]
        for w in order[1:]:
            visit(w, bid)
        walk.append(entry)

    try:
        visit(0, None)
    finally:
        sys.setrecursionlimit(old_limit)
    if len(walk) > 1 and walk[-1] == walk[0]:
        walk.pop()

    L = len(walk)
    step_edges: set[tuple[int, int]] = set()
    for i in range(L):
        a, b = walk[i], walk[(i + 1) % L]
        step_edges.add((a, b) if a < b else (b, a))

    chords: list[tuple[int, int]] = []
    for u, v in g.edges:
        if (u, v) in step_edges:
            continue
        owner = next(bid for bid in vert_blocks[u] if bid in vert_blocks[v])
        su = block_slot[(owner, u)]
        sv = block_slot[(owner, v)]
        chords.append((su, sv) if su < sv else (sv, su))
    chords.sort()

    null_chords: list[tuple[int, int]] = []
    appearances: dict[int, list[int]] = {}
    for i, v in enumerate(walk):
        appearances.setdefault(v, []).append(i)
    for v, slots in sorted(appearances.items()):
        r = len(slots)
        if r >= 2:
            for j in range(r - 1):
                null_chords.append((slots[j], slots[j + 1]))
            if r >= 3:
                null_chords.append((slots[0], slots[-1]))
    null_chords.sort()

    circuit = Circuit(tuple(walk), tuple(chords), tuple(null_chords))

    # certification: every link pair must be non-crossing on the circle
    links = [(a, b) for a, b, _ in circuit.links]
    for i in range(len(links)):
        a, b = links[i]
        for j in range(i + 1, len(links)):
            c, d = links[j]
            if len({a, b, c, d}) < 4:
                continue
            if (a < c < b) != (a < d < b):
                raise NotOuterplanarError("crossing chords: the graph has no outer circuit")

    n_bridges = sum(1 for b in blocks if len(b) == 2)
    if L + len(chords) != g.m + n_bridges:  # pragma: no cover - construction guarantee
        raise NotOuterplanarError("circuit accounting failed")
    return circuit
