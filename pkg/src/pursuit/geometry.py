"""Simple polygons with exact rational coordinates and their visibility graphs.

A vertex pair is joined in the visibility graph iff the closed segment
between them never leaves the closed polygon; grazing contact with the
boundary (collinear overlap, passing through a vertex) still counts as
visible. All predicates run on Fractions; no floating point anywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import NamedTuple

from .errors import PolygonError
from .graphs import Graph, build_graph


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def _frac(value) -> Fraction:
    if isinstance(value, bool):
        raise PolygonError(f"bad coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolygonError(f"bad coordinate {value!r}: {exc}") from None
    if isinstance(value, Fraction):
        return value
    raise PolygonError(f"coordinates must be integers or 'num/den' strings, got {value!r}")


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Polygon:
    """Closed simple polygonal chain; the closing edge is implied."""

    vertices: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def to_json(self) -> dict:
        return {"vertices": [[_fmt(p.x), _fmt(p.y)] for p in self.vertices]}

    @staticmethod
    def from_json(data: dict) -> "Polygon":
        if not isinstance(data, dict) or "vertices" not in data:
            raise PolygonError("polygon JSON must be an object with a 'vertices' field")
        return build_polygon(data["vertices"])


def build_polygon(points) -> Polygon:
    pts = []
    for item in points:
        x, y = item
        pts.append(Point(_frac(x), _frac(y)))
    if len(pts) < 3:
        raise PolygonError(f"a polygon needs at least 3 vertices, got {len(pts)}")
    return Polygon(tuple(pts))


def load_polygon(path: str) -> Polygon:
    with open(path, "r", encoding="utf-8") as fh:
        return Polygon.from_json(json.load(fh))


def save_polygon(p: Polygon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(p.to_json(), fh, sort_keys=True, indent=1)
        fh.write("\n")


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(o: Point, a: Point, b: Point) -> int:
    c = cross(o, a, b)
    return (c > 0) - (c < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when p lies on the closed segment ab."""
    if cross(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segments ab and cd intersect in a single point interior to both."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Any contact at all between the closed segments ab and cd."""
    if properly_cross(a, b, c, d):
        return True
    return (
        on_segment(c, a, b)
        or on_segment(d, a, b)
        or on_segment(a, c, d)
        or on_segment(b, c, d)
    )


@dataclass(frozen=True)
class PolygonReport:
    ok: bool
    reason: str | None = None
    where: tuple[int, ...] = ()


def validate_simple_polygon(p: Polygon) -> PolygonReport:
    """Check simplicity; violations are reported, not raised."""
    n = p.n
    if n < 3:
        raise PolygonError(f"a polygon needs at least 3 vertices, got {n}")
    for i in range(n):
        if p.vertices[i] == p.vertices[(i + 1) % n]:
            return PolygonReport(False, "repeated consecutive vertex", (i, (i + 1) % n))
    seen: dict[Point, int] = {}
    for i, v in enumerate(p.vertices):
        if v in seen:
            return PolygonReport(False, "repeated vertex", (seen[v], i))
        seen[v] = i
    for i in range(n):
        a, b = p.edge(i)
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            c, d = p.edge(j)
            if adjacent:
                # shared endpoint only; a fold-back puts a free endpoint on the other edge
                free_cd = d if j == i + 1 else c
                free_ab = a if j == i + 1 else b
                if on_segment(free_cd, a, b) or on_segment(free_ab, c, d):
                    return PolygonReport(False, f"edges {i} and {j} overlap", (i, j))
            elif segments_touch(a, b, c, d):
                return PolygonReport(False, f"edges {i} and {j} intersect", (i, j))
    return PolygonReport(True)


def point_in_polygon(pt: Point, p: Polygon) -> str:
    """Classify pt against the closed polygon: 'in', 'on', or 'out'.

    Even-odd crossing rule with exact intersections; half-open edge rule
    avoids double counting at vertices.
    """
    for i in range(p.n):
        a, b = p.edge(i)
        if on_segment(pt, a, b):
            return "on"
    inside = False
    for i in range(p.n):
        a, b = p.edge(i)
        if (a.y > pt.y) != (b.y > pt.y):
            x_at = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if pt.x < x_at:
                inside = not inside
    return "in" if inside else "out"


def _param_on(a: Point, b: Point, q: Point) -> Fraction:
    if a.x != b.x:
        return (q.x - a.x) / (b.x - a.x)
    return (q.y - a.y) / (b.y - a.y)


def _segment_visible(p: Polygon, a: Point, b: Point) -> bool:
    for i in range(p.n):
        c, d = p.edge(i)
        if properly_cross(a, b, c, d):
            return False
    params = {Fraction(0), Fraction(1)}
    for v in p.vertices:
        if v != a and v != b and on_segment(v, a, b):
            params.add(_param_on(a, b, v))
    ts = sorted(params)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        mid = Point(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)
        if point_in_polygon(mid, p) == "out":
            return False
    return True


def visibility_graph(p: Polygon) -> Graph:
    """Graph on vertex indices; edge (i,j) iff the closed segment stays in
    the closed polygon. Boundary edges are always present."""
    report = validate_simple_polygon(p)
    if not report.ok:
        raise PolygonError(f"not a simple polygon: {report.reason} at {report.where}")
    n = p.n
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            boundary = j == i + 1 or (i == 0 and j == n - 1)
            if boundary or _segment_visible(p, p.vertices[i], p.vertices[j]):
                edges.append((i, j))
    return build_graph(n, edges)


def _angular_order(pts: list[Point], center: Point) -> list[Point] | None:
    """Sort around center starting from the +x axis, ccw; None when two
    points share a ray (the caller resamples)."""

    def half(q: Point) -> int:
        dx, dy = q.x - center.x, q.y - center.y
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def cmp(q: Point, r: Point) -> int:
        hq, hr = half(q), half(r)
        if hq != hr:
            return hq - hr
        c = cross(center, q, r)
        return -1 if c > 0 else (1 if c < 0 else 0)

    for q in pts:
        if q == center:
            return None
    ordered = sorted(pts, key=cmp_to_key(cmp))
    for q, r in zip(ordered, ordered[1:]):
        if cross(center, q, r) == 0:
            return None
    return ordered


def random_simple_polygon(n: int, rng: random.Random, span: int = 50) -> Polygon:
    """Deterministic random simple polygon on n vertices.

    Draws distinct integer points and orders them angularly around their
    centroid; configurations with shared rays are resampled.
    """
    if n < 3:
        raise PolygonError(f"a polygon needs at least 3 vertices, got {n}")
    while True:
        pts = set()
        while len(pts) < n:
            pts.add(Point(Fraction(rng.randint(0, span)), Fraction(rng.randint(0, span))))
        pt_list = sorted(pts)
        cx = sum(q.x for q in pt_list) / n
        cy = sum(q.y for q in pt_list) / n
        ordered = _angular_order(pt_list, Point(cx, cy))
        if ordered is None:
            continue
        poly = Polygon(tuple(ordered))
        if validate_simple_polygon(poly).ok:
            return poly
