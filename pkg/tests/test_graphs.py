import json
import random

import pytest

from pursuit.errors import DisconnectedError, GraphError, NotOuterplanarError
from pursuit.graphs import (
    Graph,
    all_pairs_distances,
    blocks_and_cut_vertices,
    build_graph,
    diameter,
    girth,
    is_connected,
    loads_graph,
    outer_circuit,
)


def path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def cycle_edges(n):
    return path_edges(n) + [(n - 1, 0)]


def clique_edges(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def fan_edges(n):
    # path on 0..n-2 plus apex n-1
    return path_edges(n - 1) + [(n - 1, i) for i in range(n - 1)]


TWO_TRIANGLES = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]


def floyd_warshall(g):
    INF = float("inf")
    d = [[0 if i == j else INF for j in range(g.n)] for i in range(g.n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k in range(g.n):
        for i in range(g.n):
            dik = d[i][k]
            if dik == INF:
                continue
            for j in range(g.n):
                if dik + d[k][j] < d[i][j]:
                    d[i][j] = dik + d[k][j]
    return d


def random_graph(rng, n, p):
    edges = [(i, j) for i, j in clique_edges(n) if rng.random() < p]
    return build_graph(n, edges)


def random_connected_graph(rng, n):
    verts = list(range(n))
    rng.shuffle(verts)
    edges = set()
    for i in range(1, n):
        a, b = verts[rng.randrange(i)], verts[i]
        edges.add((min(a, b), max(a, b)))
    for _ in range(rng.randrange(n)):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return build_graph(n, sorted(edges))


class TestBuildGraph:
    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert g.n == 3 and g.m == 3
        assert g.adj == ((1, 2), (0, 2), (0, 1))

    def test_single_vertex(self):
        g = build_graph(1, [])
        assert g.n == 1 and g.m == 0

    def test_c5_degrees(self):
        g = build_graph(5, cycle_edges(5))
        assert g.m == 5
        assert all(g.degree(v) == 2 for v in range(5))

    def test_out_of_range(self):
        with pytest.raises(GraphError, match="out of range"):
            build_graph(3, [(0, 3)])

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            build_graph(3, [(1, 1)])

    def test_duplicate_edge(self):
        with pytest.raises(GraphError, match="duplicate"):
            build_graph(3, [(0, 1), (1, 0)])

    def test_bad_vertex_count(self):
        with pytest.raises(GraphError):
            build_graph(0, [])

    def test_has_edge(self):
        g = build_graph(4, path_edges(4))
        assert g.has_edge(1, 2) and g.has_edge(2, 1)
        assert not g.has_edge(0, 3)


class TestIO:
    def test_json_round_trip(self):
        g = build_graph(4, path_edges(4), labels={0: "start"})
        h = Graph.from_json(json.loads(json.dumps(g.to_json())))
        assert h == g
        assert h.labels == {0: "start"}

    def test_text_format(self):
        g = loads_graph("3 2\n0 1\n1 2\n")
        assert g == build_graph(3, path_edges(3))

    def test_text_with_comments(self):
        g = loads_graph("# a path\n3 2\n0 1\n1 2  # last edge\n")
        assert g.m == 2

    def test_sniffs_json(self):
        g = loads_graph('  {"n": 2, "edges": [[0, 1]]}')
        assert g.m == 1

    def test_bad_header(self):
        with pytest.raises(GraphError):
            loads_graph("3\n0 1\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphError):
            loads_graph("3 5\n0 1\n")


class TestDistances:
    def test_p3(self):
        g = build_graph(3, path_edges(3))
        dm = all_pairs_distances(g)
        assert dm[0][2] == 2

    def test_k5(self):
        g = build_graph(5, clique_edges(5))
        dm = all_pairs_distances(g)
        assert all(dm[i][j] == 1 for i in range(5) for j in range(5) if i != j)

    def test_unreachable_sentinel(self):
        g = build_graph(3, [(0, 1)])
        dm = all_pairs_distances(g)
        assert dm[0][2] == -1

    def test_matches_floyd_warshall_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, rng.random())
            dm = all_pairs_distances(g)
            fw = floyd_warshall(g)
            for i in range(n):
                for j in range(n):
                    want = -1 if fw[i][j] == float("inf") else fw[i][j]
                    assert dm[i][j] == want

    def test_diameter_examples(self):
        assert diameter(build_graph(6, cycle_edges(6))) == 3
        assert diameter(build_graph(5, clique_edges(5))) == 1
        assert diameter(build_graph(2, [(0, 1)])) == 1
        assert diameter(build_graph(8, path_edges(8))) == 7

    def test_diameter_disconnected(self):
        with pytest.raises(DisconnectedError):
            diameter(build_graph(3, [(0, 1)]))


class TestGirth:
    def test_cycles(self):
        assert girth(build_graph(5, cycle_edges(5))) == 5
        assert girth(build_graph(4, clique_edges(4))) == 3

    def test_forest(self):
        assert girth(build_graph(4, path_edges(4))) is None

    def test_two_triangles(self):
        assert girth(build_graph(5, TWO_TRIANGLES)) == 3


class TestBlocks:
    def test_two_triangles(self):
        blocks, cuts = blocks_and_cut_vertices(build_graph(5, TWO_TRIANGLES))
        assert sorted(blocks) == [(0, 1, 2), (2, 3, 4)]
        assert cuts == {2}

    def test_c5(self):
        blocks, cuts = blocks_and_cut_vertices(build_graph(5, cycle_edges(5)))
        assert blocks == [(0, 1, 2, 3, 4)]
        assert cuts == frozenset()

    def test_p4(self):
        blocks, cuts = blocks_and_cut_vertices(build_graph(4, path_edges(4)))
        assert blocks == [(0, 1), (1, 2), (2, 3)]
        assert cuts == {1, 2}

    def test_disconnected(self):
        with pytest.raises(DisconnectedError):
            blocks_and_cut_vertices(build_graph(4, [(0, 1), (2, 3)]))

    def test_every_edge_in_exactly_one_block(self):
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(2, 9)
            g = random_graph(rng, n, rng.uniform(0.3, 0.9))
            if not is_connected(g):
                continue
            blocks, _ = blocks_and_cut_vertices(g)
            for u, v in g.edges:
                owners = [b for b in blocks if u in b and v in b]
                assert len(owners) == 1


def circuit_invariant(g, c):
    L = c.length
    # consecutive slots are adjacent
    for i in range(L):
        a, b = c.walk[i], c.walk[(i + 1) % L]
        assert g.has_edge(a, b)
    # every edge is a walk step or a chord
    steps = set()
    for i in range(L):
        a, b = c.walk[i], c.walk[(i + 1) % L]
        steps.add((min(a, b), max(a, b)))
    chord_edges = {(min(c.vertex(a), c.vertex(b)), max(c.vertex(a), c.vertex(b))) for a, b in c.chords}
    assert steps | chord_edges == set(g.edges)
    # null chords join two appearances of one vertex
    for a, b in c.null_chords:
        assert c.vertex(a) == c.vertex(b)
    # slot accounting: walk steps + chords == edges + duplicated bridge steps
    blocks, _ = blocks_and_cut_vertices(g)
    bridges = sum(1 for b in blocks if len(b) == 2)
    assert L + len(c.chords) == g.m + bridges


class TestOuterCircuit:
    def test_c5(self):
        g = build_graph(5, cycle_edges(5))
        c = outer_circuit(g)
        assert c.length == 5
        assert c.chords == () and c.null_chords == ()
        circuit_invariant(g, c)

    def test_fan_on_six_vertices(self):
        # path 0-1-2-3-4 plus apex 5 adjacent to all of it
        g = build_graph(6, fan_edges(6))
        c = outer_circuit(g)
        assert c.length == 6
        apex_chords = {tuple(sorted((c.vertex(a), c.vertex(b)))) for a, b in c.chords}
        assert apex_chords == {(1, 5), (2, 5), (3, 5)}
        circuit_invariant(g, c)

    def test_two_triangles_null_chord(self):
        g = build_graph(5, TWO_TRIANGLES)
        c = outer_circuit(g)
        assert c.length == 6
        assert len(c.slots_of(2)) == 2
        assert len(c.null_chords) == 1
        a, b = c.null_chords[0]
        assert c.vertex(a) == c.vertex(b) == 2
        circuit_invariant(g, c)

    def test_k4_rejected(self):
        with pytest.raises(NotOuterplanarError):
            outer_circuit(build_graph(4, clique_edges(4)))

    def test_k23_rejected(self):
        edges = [(a, b) for a in (0, 1) for b in (2, 3, 4)]
        with pytest.raises(NotOuterplanarError):
            outer_circuit(build_graph(5, edges))

    def test_bridge_walked_twice(self):
        g = build_graph(2, [(0, 1)])
        c = outer_circuit(g)
        assert c.walk == (0, 1)
        circuit_invariant(g, c)

    def test_path_graph(self):
        g = build_graph(4, path_edges(4))
        c = outer_circuit(g)
        assert c.length == 6  # each of the 3 bridges twice
        assert len(c.null_chords) == 2  # middle vertices appear twice
        circuit_invariant(g, c)

    def test_single_vertex(self):
        c = outer_circuit(build_graph(1, []))
        assert c.walk == (0,)

    def test_triangles_in_a_row_with_bridge(self):
        # triangle 0-1-2, bridge 2-3, triangle 3-4-5
        edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]
        g = build_graph(6, edges)
        c = outer_circuit(g)
        circuit_invariant(g, c)
        assert len(c.slots_of(2)) == 2
        assert len(c.slots_of(3)) == 2

    def test_arc_helpers(self):
        c = outer_circuit(build_graph(5, cycle_edges(5)))
        assert c.arc_len(0, 3, 1) == 3
        assert c.arc_len(0, 3, -1) == 2
        assert c.in_open_arc(0, 3, 1, 1)
        assert not c.in_open_arc(0, 3, 3, 1)
        assert c.in_open_arc(0, 3, 4, -1)
        assert c.step(4, 1) == 0 and c.step(0, -1) == 4
