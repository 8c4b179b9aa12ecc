"""Cut decompositions, treedepth, treewidth and separator machinery.

A cut decomposition is a rooted tree of vertex containers: containers
partition the vertices, every edge of the graph joins containers on an
ancestor-descendant node pair, and each non-leaf container is a cut-set
of the subgraph induced by its subtree's containers. The load and time
recursions measure how many lazy zombies a tree-guided pursuit needs and
how long it takes; the starred variants staff cliques instead of single
vertices. Treedepth trees convert to cut decompositions by compressing
unary chains, and back by unrolling containers into paths.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import DecompositionError, GraphError, TooLargeError
from .graphs import Graph, diameter

TREEDEPTH_BOUND = 14
TREEWIDTH_BOUND = 14
SEPARATOR_BOUND = 16
PROFILE_BOUND = 12
CLIQUE_COVER_BOUND = 12


# ---------------------------------------------------------------- bitmask utilities

def _adj_masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _components_of(adjm: list[int], mask: int) -> list[int]:
    comps = []
    rem = mask
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adjm[v] & rem & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rem &= ~comp
    return comps


# ---------------------------------------------------------------- domain types

@dataclass(frozen=True)
class TreedepthTree:
    """Rooted tree on the graph's vertices; parent[root] is -1."""

    parent: tuple[int, ...]
    root: int

    @property
    def n(self) -> int:
        return len(self.parent)

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return ch

    def depth(self, v: int) -> int:
        d = 0
        while self.parent[v] >= 0:
            v = self.parent[v]
            d += 1
        return d

    def vertex_height(self) -> int:
        """Vertices on the longest root-to-leaf chain (single vertex: 1)."""
        return 1 + max(self.depth(v) for v in range(self.n))

    def is_ancestor(self, a: int, v: int) -> bool:
        while v >= 0:
            if v == a:
                return True
            v = self.parent[v]
        return False

    def to_json(self) -> str:
        return json.dumps({"parent": list(self.parent), "root": self.root})

    @classmethod
    def from_json(cls, text: str) -> "TreedepthTree":
        obj = json.loads(text)
        return cls(tuple(int(p) for p in obj["parent"]), int(obj["root"]))


def validate_treedepth_tree(g: Graph, t: TreedepthTree) -> None:
    """Structural checks plus the closure property; raises on violation."""
    n = t.n
    if n != g.n:
        raise DecompositionError("tree order differs from graph order")
    roots = [v for v, p in enumerate(t.parent) if p == -1]
    if roots != [t.root]:
        raise DecompositionError("tree must have exactly the declared root")
    for v, p in enumerate(t.parent):
        if v != t.root and not 0 <= p < n:
            raise DecompositionError(f"vertex {v} has out-of-range parent {p}")
    for v in range(n):
        w, steps = v, 0
        while w != t.root:
            w = t.parent[w]
            steps += 1
            if steps > n:
                raise DecompositionError("parent pointers contain a cycle")
    for u, v in g.edges:
        if not (t.is_ancestor(u, v) or t.is_ancestor(v, u)):
            raise DecompositionError(f"edge ({u},{v}) joins incomparable vertices")


@dataclass(frozen=True)
class CutDecomposition:
    """Rooted container tree; parents[i] is -1 for the root node."""

    parents: tuple[int, ...]
    containers: tuple[tuple[int, ...], ...]

    @property
    def node_count(self) -> int:
        return len(self.parents)

    @property
    def root(self) -> int:
        return self.parents.index(-1)

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in range(self.node_count)]
        for x, p in enumerate(self.parents):
            if p >= 0:
                ch[p].append(x)
        return ch

    @property
    def cdw(self) -> int:
        """Width: size of the largest container."""
        return max(len(c) for c in self.containers)

    def height(self) -> int:
        """Edge-height of the node tree (single node: 0)."""
        ch = self.children()

        def h(x: int) -> int:
            return 1 + max((h(y) for y in ch[x]), default=-1)

        return h(self.root)

    def subtree_vertices(self, x: int) -> set[int]:
        ch = self.children()
        out: set[int] = set()
        stack = [x]
        while stack:
            y = stack.pop()
            out.update(self.containers[y])
            stack.extend(ch[y])
        return out

    def to_json(self) -> str:
        nodes = [{"id": i, "parent": (None if p < 0 else p), "container": list(c)}
                 for i, (p, c) in enumerate(zip(self.parents, self.containers))]
        return json.dumps({"nodes": nodes})

    @classmethod
    def from_json(cls, text: str) -> "CutDecomposition":
        obj = json.loads(text)
        nodes = sorted(obj["nodes"], key=lambda r: int(r["id"]))
        if [int(r["id"]) for r in nodes] != list(range(len(nodes))):
            raise DecompositionError("node ids must be 0..k-1")
        parents = tuple(-1 if r["parent"] is None else int(r["parent"]) for r in nodes)
        containers = tuple(tuple(sorted(int(v) for v in r["container"])) for r in nodes)
        return cls(parents, containers)


def _check_tree_shape(d: CutDecomposition) -> None:
    k = d.node_count
    roots = [x for x, p in enumerate(d.parents) if p == -1]
    if len(roots) != 1:
        raise DecompositionError(f"expected one root, found {len(roots)}")
    for x, p in enumerate(d.parents):
        if p >= 0 and not 0 <= p < k:
            raise DecompositionError(f"node {x} has out-of-range parent {p}")
    # ascent from every node must reach the root without looping
    for x in range(k):
        seen = set()
        while x >= 0:
            if x in seen:
                raise DecompositionError("parent pointers contain a cycle")
            seen.add(x)
            x = d.parents[x]


@dataclass(frozen=True)
class DecompReport:
    ok: bool
    reason: str = ""


def validate_cut_decomposition(g: Graph, d: CutDecomposition) -> DecompReport:
    """Check the three container-tree properties; first violation wins."""
    try:
        _check_tree_shape(d)
    except DecompositionError as exc:
        return DecompReport(False, str(exc))
    owner: dict[int, int] = {}
    for x, cont in enumerate(d.containers):
        if not cont:
            return DecompReport(False, f"node {x} has an empty container")
        for v in cont:
            if not 0 <= v < g.n:
                return DecompReport(False, f"vertex {v} out of range")
            if v in owner:
                return DecompReport(False, f"vertex {v} appears in nodes {owner[v]} and {x}")
            owner[v] = x
    if len(owner) != g.n:
        missing = next(v for v in range(g.n) if v not in owner)
        return DecompReport(False, f"vertex {missing} is in no container")

    def node_ancestor(a: int, y: int) -> bool:
        while y >= 0:
            if y == a:
                return True
            y = d.parents[y]
        return False

    for u, v in g.edges:
        x, y = owner[u], owner[v]
        if not (node_ancestor(x, y) or node_ancestor(y, x)):
            return DecompReport(
                False, f"edge ({u},{v}) joins incomparable nodes {x} and {y}")

    adjm = _adj_masks(g)
    ch = d.children()
    for x in range(d.node_count):
        if not ch[x]:
            continue
        sub = d.subtree_vertices(x)
        y_mask = sum(1 << v for v in sub)
        c_mask = sum(1 << v for v in d.containers[x])
        before = len(_components_of(adjm, y_mask))
        after_mask = y_mask & ~c_mask
        after = len(_components_of(adjm, after_mask))
        if after <= before:
            return DecompReport(
                False, f"container of non-leaf node {x} is not a cut-set of its component")
    return DecompReport(True)


# ---------------------------------------------------------------- load and time

def load(d: CutDecomposition) -> int:
    """Container size plus heaviest child, at the root."""
    _check_tree_shape(d)
    ch = d.children()

    def rec(x: int) -> int:
        base = len(d.containers[x])
        return base + max((rec(y) for y in ch[x]), default=0)

    return rec(d.root)


def time_bound(d: CutDecomposition, g: Graph) -> int:
    """Capture-round bound of the tree-guided pursuit (exponential-ish)."""
    _check_tree_shape(d)
    delta = diameter(g)
    ch = d.children()

    def rec(x: int) -> int:
        local = len(d.containers[x]) * (delta - 1) + 1
        sub = max((rec(y) for y in ch[x]), default=1)
        return local * sub

    return rec(d.root)


def minimum_clique_cover(g: Graph, vertices) -> tuple[tuple[int, ...], ...]:
    """One optimal partition of the vertex set into cliques of G[S]."""
    verts = sorted(set(vertices))
    m = len(verts)
    if m > CLIQUE_COVER_BOUND:
        raise TooLargeError(f"clique cover limited to {CLIQUE_COVER_BOUND} vertices")
    if m == 0:
        return ()
    pos = {v: i for i, v in enumerate(verts)}
    local = [0] * m
    for i, v in enumerate(verts):
        for w in g.adj[v]:
            if w in pos:
                local[i] |= 1 << pos[w]
    full = (1 << m) - 1
    is_clique = [False] * (full + 1)
    is_clique[0] = True
    for mask in range(1, full + 1):
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        is_clique[mask] = is_clique[rest] and (rest & local[low]) == rest

    @lru_cache(maxsize=None)
    def theta(mask: int) -> int:
        if mask == 0:
            return 0
        low = 1 << ((mask & -mask).bit_length() - 1)
        best = m
        sub = mask
        while sub:
            if sub & low and is_clique[sub]:
                best = min(best, 1 + theta(mask & ~sub))
            sub = (sub - 1) & mask
        return best

    cliques: list[tuple[int, ...]] = []
    mask = full
    while mask:
        low = 1 << ((mask & -mask).bit_length() - 1)
        sub = mask
        pick = None
        while sub:
            if sub & low and is_clique[sub] and 1 + theta(mask & ~sub) == theta(mask):
                # submask iteration runs high to low; keep looking for the
                # lexicographically smallest winning clique
                pick = sub
            sub = (sub - 1) & mask
        mask &= ~pick
        cliques.append(tuple(verts[i] for i in _bits(pick)))
    theta.cache_clear()
    return tuple(cliques)


def clique_cover_number(g: Graph, vertices) -> int:
    """Minimum number of cliques of the induced subgraph covering it."""
    return len(minimum_clique_cover(g, vertices))


def load_star(g: Graph, d: CutDecomposition) -> int:
    """Load with containers priced by clique cover number instead of size."""
    _check_tree_shape(d)
    ch = d.children()

    def rec(x: int) -> int:
        base = clique_cover_number(g, d.containers[x])
        return base + max((rec(y) for y in ch[x]), default=0)

    return rec(d.root)


def time_star_bound(g: Graph, d: CutDecomposition) -> int:
    _check_tree_shape(d)
    delta = diameter(g)
    ch = d.children()

    def rec(x: int) -> int:
        local = clique_cover_number(g, d.containers[x]) * delta + 1
        sub = max((rec(y) for y in ch[x]), default=1)
        return local * sub

    return rec(d.root)


# ---------------------------------------------------------------- treedepth

def treedepth(g: Graph, bound: int = TREEDEPTH_BOUND) -> tuple[int, TreedepthTree]:
    """Exact treedepth with a witness elimination tree (connected graphs)."""
    n = g.n
    if n > bound:
        raise TooLargeError(f"treedepth limited to {bound} vertices")
    adjm = _adj_masks(g)
    full = (1 << n) - 1
    if len(_components_of(adjm, full)) != 1:
        raise GraphError("treedepth witness requires a connected graph")

    @lru_cache(maxsize=None)
    def td(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return 1
        comps = _components_of(adjm, mask)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        best = n + 1
        for v in _bits(mask):
            best = min(best, 1 + td(mask ^ (1 << v)))
        return best

    value = td(full)
    parent = [-1] * n

    def build(mask: int, par: int) -> int:
        """Attach an optimal elimination tree for connected G[mask]; returns its root."""
        target = td(mask)
        for v in _bits(mask):
            if mask == (1 << v) or 1 + td(mask ^ (1 << v)) == target:
                parent[v] = par
                rest = mask ^ (1 << v)
                for comp in _components_of(adjm, rest):
                    build(comp, v)
                return v
        raise AssertionError("memo inconsistent")

    root = build(full, -1)
    td.cache_clear()
    return value, TreedepthTree(tuple(parent), root)


def random_treedepth_tree(g: Graph, rng: random.Random) -> TreedepthTree:
    """Uniform-ish random elimination tree; always a valid closure witness."""
    n = g.n
    adjm = _adj_masks(g)
    full = (1 << n) - 1
    if len(_components_of(adjm, full)) != 1:
        raise GraphError("requires a connected graph")
    parent = [-1] * n

    def build(mask: int, par: int) -> int:
        verts = list(_bits(mask))
        v = rng.choice(verts)
        parent[v] = par
        for comp in _components_of(adjm, mask ^ (1 << v)):
            build(comp, v)
        return v

    root = build(full, -1)
    return TreedepthTree(tuple(parent), root)


# ---------------------------------------------------------------- conversions

def td_tree_to_cut_decomposition(t: TreedepthTree) -> CutDecomposition:
    """Compress maximal unary chains (terminating node included) into containers."""
    ch = t.children()
    parents: list[int] = []
    containers: list[tuple[int, ...]] = []

    def walk(v: int, parent_node: int) -> None:
        chain = [v]
        while len(ch[v]) == 1:
            v = ch[v][0]
            chain.append(v)
        node = len(parents)
        parents.append(parent_node)
        containers.append(tuple(sorted(chain)))
        for c in ch[v]:
            walk(c, node)

    walk(t.root, -1)
    return CutDecomposition(tuple(parents), tuple(containers))


def cut_decomposition_to_td_tree(d: CutDecomposition) -> TreedepthTree:
    """Unroll each container into a path toward the root, ids ascending upward."""
    _check_tree_shape(d)
    n = sum(len(c) for c in d.containers)
    seen = sorted(v for c in d.containers for v in c)
    if seen != list(range(n)):
        raise DecompositionError("containers must partition 0..n-1")
    parent = [-1] * n
    for x, cont in enumerate(d.containers):
        cont = sorted(cont)
        for a, b in zip(cont, cont[1:]):
            parent[a] = b  # next id up the path toward the root
        p = d.parents[x]
        if p >= 0:
            parent[cont[-1]] = min(d.containers[p])
    root = max(d.containers[d.root])
    return TreedepthTree(tuple(parent), root)


# ---------------------------------------------------------------- treewidth

def treewidth_exact(g: Graph, bound: int = TREEWIDTH_BOUND) -> int:
    """Exact treewidth by subset DP over elimination orderings."""
    n = g.n
    if n > bound:
        raise TooLargeError(f"treewidth limited to {bound} vertices")
    if n == 1:
        return 0
    adjm = _adj_masks(g)
    full = (1 << n) - 1

    def back_degree(S: int, v: int) -> int:
        # vertices outside S+{v} reachable from v through S
        comp = 1 << v
        frontier = comp
        out = 0
        inside = S | (1 << v)
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                nb = adjm[w]
                out |= nb & ~inside
                nxt |= nb & S & ~comp
            comp |= nxt
            frontier = nxt
        return bin(out).count("1")

    f = [0] * (full + 1)
    f[0] = -1
    for S in range(1, full + 1):
        best = n
        for v in _bits(S):
            prev = S ^ (1 << v)
            cand = max(f[prev], back_degree(prev, v))
            if cand < best:
                best = cand
        f[S] = best
    return f[full]


# ---------------------------------------------------------------- separators

def _as_fraction(alpha) -> Fraction:
    if isinstance(alpha, Fraction):
        a = alpha
    elif isinstance(alpha, int):
        a = Fraction(alpha)
    elif isinstance(alpha, str):
        a = Fraction(alpha)
    else:
        raise GraphError(f"alpha must be an exact rational, got {type(alpha).__name__}")
    if not 0 < a < 1:
        raise GraphError("alpha must lie strictly between 0 and 1")
    return a


def min_alpha_separator(g: Graph, vertices, alpha) -> tuple[int, ...]:
    """Smallest S within A so every component of G[A - S] has <= alpha*|A| vertices."""
    a = _as_fraction(alpha)
    A = sorted(set(vertices))
    if len(A) > SEPARATOR_BOUND:
        raise TooLargeError(f"separator search limited to {SEPARATOR_BOUND} vertices")
    adjm = _adj_masks(g)
    amask = sum(1 << v for v in A)
    limit = a * len(A)
    for size in range(len(A) + 1):
        for S in combinations(A, size):
            smask = sum(1 << v for v in S)
            if all(bin(c).count("1") <= limit
                   for c in _components_of(adjm, amask & ~smask)):
                return S
    raise AssertionError("S = A always satisfies the bound vacuously")


@dataclass(frozen=True)
class SeparatorProfile:
    alpha: Fraction
    sizes: tuple[int, ...]  # sizes[i-1] = s(i), max over |A| <= i of min separator

    def s(self, i: int) -> int:
        return self.sizes[i - 1]


def separator_profile(g: Graph, alpha=Fraction(1, 2)) -> SeparatorProfile:
    """s(i) for i = 1..n: worst min-separator size over subsets of order <= i."""
    a = _as_fraction(alpha)
    n = g.n
    if n > PROFILE_BOUND:
        raise TooLargeError(f"separator profile limited to {PROFILE_BOUND} vertices")
    adjm = _adj_masks(g)
    best_by_order = [0] * (n + 1)
    for amask in range(1, 1 << n):
        order = bin(amask).count("1")
        limit = a * order
        found = None
        # subsets of amask by increasing popcount
        verts = [v for v in _bits(amask)]
        for size in range(order + 1):
            for S in combinations(verts, size):
                smask = sum(1 << v for v in S)
                if all(bin(c).count("1") <= limit
                       for c in _components_of(adjm, amask & ~smask)):
                    found = size
                    break
            if found is not None:
                break
        best_by_order[order] = max(best_by_order[order], found)
    sizes = []
    running = 0
    for i in range(1, n + 1):
        running = max(running, best_by_order[i])
        sizes.append(running)
    return SeparatorProfile(a, tuple(sizes))


@dataclass(frozen=True)
class Lemma2Report:
    n: int
    s_n: int
    td: int
    sigma_terms: tuple[int, ...]
    sigma: int
    tw: int
    lower_ok: bool  # s(n) <= td
    middle_ok: bool  # td <= sigma
    upper_ok: bool  # sigma <= (tw+1) log2 n, checked as 2^sigma <= n^(tw+1)
    ok: bool


def check_lemma2(g: Graph) -> Lemma2Report:
    """Verify s(n) <= td <= sum_i s(floor(n/2^i)) <= (tw+1) log2 n exactly.

    The last comparison avoids real logarithms: 2^sigma <= n^(tw+1).
    Defined for 2 <= n <= 10; at n = 1 the rightmost bound is 0 while both
    sides of the chain are 1, so the statement needs n >= 2.
    """
    n = g.n
    if not 2 <= n <= 10:
        raise TooLargeError("lemma check covers 2 <= n <= 10")
    prof = separator_profile(g)
    value, _ = treedepth(g)
    tw = treewidth_exact(g)
    terms = []
    i = 0
    while (n >> i) >= 1:
        terms.append(prof.s(n >> i))
        i += 1
    sigma = sum(terms)
    lower = prof.s(n) <= value
    middle = value <= sigma
    upper = 2 ** sigma <= n ** (tw + 1)
    return Lemma2Report(n, prof.s(n), value, tuple(terms), sigma, tw,
                        lower, middle, upper, lower and middle and upper)


def random_cut_decomposition(g: Graph, rng: random.Random) -> CutDecomposition:
    """Random valid decomposition: compress a random elimination tree."""
    return td_tree_to_cut_decomposition(random_treedepth_tree(g, rng))
