import random
from fractions import Fraction

import pytest

from pursuit.errors import PolygonError
from pursuit.geometry import (
    Point,
    Polygon,
    build_polygon,
    cross,
    on_segment,
    point_in_polygon,
    properly_cross,
    random_simple_polygon,
    validate_simple_polygon,
    visibility_graph,
)

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
BOWTIE = [(0, 0), (2, 2), (2, 0), (0, 2)]
L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]


def winding_number(pt, poly):
    wn = 0
    for i in range(poly.n):
        a, b = poly.edge(i)
        if a.y <= pt.y:
            if b.y > pt.y and cross(a, b, pt) > 0:
                wn += 1
        elif b.y <= pt.y and cross(a, b, pt) < 0:
            wn -= 1
    return wn


def oracle_point_in(pt, poly):
    for i in range(poly.n):
        a, b = poly.edge(i)
        if on_segment(pt, a, b):
            return "on"
    return "in" if winding_number(pt, poly) != 0 else "out"


def oracle_visible(poly, i, j):
    """Independent route: parametric clipping + winding-number point tests."""
    a, b = poly.vertices[i], poly.vertices[j]
    ab = Point(b.x - a.x, b.y - a.y)
    params = {Fraction(0), Fraction(1)}
    for k in range(poly.n):
        c, d = poly.edge(k)
        cd = Point(d.x - c.x, d.y - c.y)
        denom = ab.x * cd.y - ab.y * cd.x
        ac = Point(c.x - a.x, c.y - a.y)
        if denom != 0:
            t = (ac.x * cd.y - ac.y * cd.x) / denom
            s = (ac.x * ab.y - ac.y * ab.x) / denom
            if 0 <= t <= 1 and 0 <= s <= 1:
                if 0 < t < 1 and 0 < s < 1:
                    return False  # transversal interior crossing
                params.add(t)
        elif ac.x * ab.y - ac.y * ab.x == 0:
            # collinear edge: clip its endpoints onto [0, 1]
            for q in (c, d):
                if ab.x != 0:
                    t = (q.x - a.x) / ab.x
                else:
                    t = (q.y - a.y) / ab.y
                if 0 <= t <= 1:
                    params.add(t)
    ts = sorted(params)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        mid = Point(a.x + ab.x * tm, a.y + ab.y * tm)
        if oracle_point_in(mid, poly) == "out":
            return False
    return True


def oracle_graph_edges(poly):
    out = set()
    for i in range(poly.n):
        for j in range(i + 1, poly.n):
            if oracle_visible(poly, i, j):
                out.add((i, j))
    return out


class TestValidation:
    def test_square_ok(self):
        assert validate_simple_polygon(build_polygon(SQUARE)).ok

    def test_bowtie_crossing(self):
        report = validate_simple_polygon(build_polygon(BOWTIE))
        assert not report.ok
        assert report.where == (0, 2)

    def test_repeated_vertex(self):
        report = validate_simple_polygon(build_polygon([(0, 0), (1, 0), (0, 0), (1, 1)]))
        assert not report.ok
        assert "repeated" in report.reason

    def test_consecutive_repeat(self):
        report = validate_simple_polygon(build_polygon([(0, 0), (0, 0), (1, 1)]))
        assert not report.ok

    def test_fold_back(self):
        report = validate_simple_polygon(build_polygon([(0, 0), (4, 0), (1, 0), (2, 2)]))
        assert not report.ok

    def test_too_few_vertices(self):
        with pytest.raises(PolygonError):
            build_polygon([(0, 0), (1, 1)])

    def test_fraction_parsing(self):
        p = build_polygon([["1/2", 0], [2, "3/4"], [0, 1]])
        assert p.vertices[0].x == Fraction(1, 2)
        assert p.vertices[1].y == Fraction(3, 4)

    def test_json_round_trip(self):
        p = build_polygon([["1/3", 0], [2, 1], [0, "5/7"]])
        q = Polygon.from_json(p.to_json())
        assert p == q


class TestPointInPolygon:
    def test_square_cases(self):
        p = build_polygon(SQUARE)
        assert point_in_polygon(Point(Fraction(1, 2), Fraction(1, 2)), p) == "in"
        assert point_in_polygon(Point(Fraction(2), Fraction(0)), p) == "out"
        assert point_in_polygon(Point(Fraction(1, 2), Fraction(0)), p) == "on"
        assert point_in_polygon(Point(Fraction(0), Fraction(0)), p) == "on"

    def test_matches_winding_oracle(self):
        rng = random.Random(3)
        for _ in range(8):
            poly = random_simple_polygon(rng.randint(4, 9), rng, span=12)
            for _ in range(40):
                pt = Point(Fraction(rng.randint(-2, 14)), Fraction(rng.randint(-2, 14)))
                assert point_in_polygon(pt, poly) == oracle_point_in(pt, poly)


class TestPredicates:
    def test_properly_cross(self):
        a, b = Point(Fraction(0), Fraction(0)), Point(Fraction(2), Fraction(2))
        c, d = Point(Fraction(0), Fraction(2)), Point(Fraction(2), Fraction(0))
        assert properly_cross(a, b, c, d)
        assert not properly_cross(a, b, a, d)  # shared endpoint

    def test_on_segment(self):
        a, b = Point(Fraction(0), Fraction(0)), Point(Fraction(4), Fraction(2))
        assert on_segment(Point(Fraction(2), Fraction(1)), a, b)
        assert not on_segment(Point(Fraction(2), Fraction(2)), a, b)


class TestVisibilityGraph:
    def test_convex_is_complete(self):
        for n in range(4, 9):
            pts = [(i, i * i) for i in range(n)]  # parabola: convex position
            g = visibility_graph(build_polygon(pts))
            assert g.m == n * (n - 1) // 2

    def test_l_shape_blocked_pairs(self):
        # (1,4) crosses the notch edge; (2,4) and (2,5) pass through the notch itself
        g = visibility_graph(build_polygon(L_SHAPE))
        missing = [(i, j) for i in range(6) for j in range(i + 1, 6) if not g.has_edge(i, j)]
        assert missing == [(1, 4), (2, 4), (2, 5)]

    def test_boundary_always_present(self):
        rng = random.Random(7)
        for _ in range(5):
            poly = random_simple_polygon(rng.randint(4, 10), rng)
            g = visibility_graph(poly)
            for i in range(poly.n):
                assert g.has_edge(i, (i + 1) % poly.n)

    def test_invalid_polygon_raises(self):
        with pytest.raises(PolygonError):
            visibility_graph(build_polygon(BOWTIE))

    def test_orientation_reversal_invariant(self):
        p = build_polygon(L_SHAPE)
        rev = Polygon(tuple(reversed(p.vertices)))
        g1, g2 = visibility_graph(p), visibility_graph(rev)
        n = p.n
        remap = {i: (n - 1 - i) for i in range(n)}
        edges2 = {tuple(sorted((remap[u], remap[v]))) for u, v in g2.edges}
        assert set(g1.edges) == edges2

    def test_scaling_invariant(self):
        p = build_polygon(L_SHAPE)
        s = Fraction(3, 7)
        scaled = Polygon(tuple(Point(v.x * s, v.y * s) for v in p.vertices))
        assert visibility_graph(p).edges == visibility_graph(scaled).edges

    def test_matches_independent_oracle(self):
        rng = random.Random(19)
        for _ in range(8):
            poly = random_simple_polygon(rng.randint(4, 10), rng)
            g = visibility_graph(poly)
            assert set(g.edges) == oracle_graph_edges(poly)

    def test_grazing_through_vertex_counts_visible(self):
        # (2,0) -> (0,2) passes exactly through the reflex corner (1,1)
        g = visibility_graph(build_polygon(L_SHAPE))
        assert g.has_edge(1, 5)


class TestRandomPolygon:
    def test_deterministic(self):
        a = random_simple_polygon(9, random.Random(42))
        b = random_simple_polygon(9, random.Random(42))
        assert a == b

    def test_simple_and_sized(self):
        rng = random.Random(1)
        for n in (3, 5, 8, 12):
            poly = random_simple_polygon(n, rng)
            assert poly.n == n
            assert validate_simple_polygon(poly).ok
