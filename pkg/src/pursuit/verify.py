"""Executable acceptance suite.

Every guarantee the package makes is replayed here end to end: lower-bound
families, scripted infinite evasion, number hierarchies, constructive
strategies against solver-optimal survivors, decomposition bounds, the
separator chain, geometry against a brute-force oracle, and the solver
against explicit minimax.  The CLI `verify` subcommand and the acceptance
tests both run through these functions, so there is a single source of
truth for what "working" means.

Each check returns PASS or FAIL with measured values; a run of the full
suite reports every claim exactly once (unselected checks show SKIPPED).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Callable

import numpy as np

from .decomposition import (
    CutDecomposition,
    check_lemma2,
    cut_decomposition_to_td_tree,
    load,
    load_star,
    random_cut_decomposition,
    td_tree_to_cut_decomposition,
    time_bound,
    time_star_bound,
    treedepth,
    validate_cut_decomposition,
    validate_treedepth_tree,
)
from .engine import Variant, play_match
from .families import (
    ScriptedEvader,
    clique_edges,
    cycle_edges,
    fan_edges,
    free_component,
    gk_clique,
    gk_star,
    random_outerplanar_edges,
)
from .geometry import Point, build_polygon, cross, on_segment, random_simple_polygon, visibility_graph
from .graphs import Graph, build_graph, diameter, is_connected
from .solver import (
    Mode,
    TableEvaderPolicy,
    TablePursuerPolicy,
    game_number,
    minimax_reference,
    solve_game,
    state_count,
)
from .strategies import (
    clique_cover_zombie_policy,
    cut_decomp_zombie_policy,
    outerplanar_lazy_policy,
    outerplanar_universal_lazy_policy,
)

__all__ = [
    "CheckResult",
    "run_check",
    "run_suite",
    "suite_ids",
    "suite_selectors",
]

LAZY = Variant.LAZY_ZOMBIES


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one acceptance check."""

    id: str
    anchor: str
    claim: str
    status: str  # PASS | FAIL | SKIPPED
    measured: dict
    runtime_s: float

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "claim": self.claim,
                "status": self.status, "measured": self.measured,
                "runtime_s": self.runtime_s}


# ---------------------------------------------------------------- sampling helpers

def _random_connected(n: int, rng: random.Random) -> Graph:
    """Connected graph with a uniformly drawn edge count, tree to clique."""
    if n == 1:
        return build_graph(1, [])
    pairs = list(combinations(range(n), 2))
    m = rng.randint(n - 1, len(pairs))
    verts = list(range(n))
    rng.shuffle(verts)
    edges = {tuple(sorted((verts[rng.randrange(i)], verts[i])))
             for i in range(1, n)}
    pool = [e for e in pairs if e not in edges]
    rng.shuffle(pool)
    edges.update(pool[:m - len(edges)])
    return build_graph(n, sorted(edges))


@lru_cache(maxsize=None)
def _connected_classes(n: int) -> tuple[Graph, ...]:
    """All connected graphs on n vertices, one per isomorphism class.

    Walks every edge subset once; the first mask of each class expands its
    full permutation orbit, so the quadratic-looking loop touches each
    orbit's bit work only once.
    """
    if n == 1:
        return (build_graph(1, []),)
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    index = {e: i for i, e in enumerate(pairs)}
    tables = [tuple(index[tuple(sorted((p[a], p[b])))] for a, b in pairs)
              for p in permutations(range(n))]
    seen = bytearray(1 << m)
    out = []
    for mask in range(1 << m):
        if seen[mask]:
            continue
        for tbl in tables:
            pm, rem = 0, mask
            while rem:
                low = rem & -rem
                pm |= 1 << tbl[low.bit_length() - 1]
                rem ^= low
            seen[pm] = 1
        g = build_graph(n, [pairs[i] for i in range(m) if mask >> i & 1])
        if is_connected(g):
            out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def _pinning_instances(seed: int, count: int = 100) -> tuple:
    """Random graphs with optimal-treedepth decompositions, solver-sized.

    Skips draws whose reference solve would not fit the state budget; the
    squad checks for containers and clique covers share one instance list.
    """
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < 40 * count:
        attempts += 1
        g = _random_connected(rng.randint(2, 10), rng)
        td, tree = treedepth(g)
        if state_count(g.n, td) > 250_000:
            continue
        if state_count(g.n, td) * (2 ** td) > 30_000_000:
            continue
        out.append((g, td_tree_to_cut_decomposition(tree), td))
    return tuple(out)


# ---------------------------------------------------------------- geometry oracle

def _oracle_winding(pt: Point, poly) -> int:
    wn = 0
    for i in range(poly.n):
        a, b = poly.edge(i)
        if a.y <= pt.y:
            if b.y > pt.y and cross(a, b, pt) > 0:
                wn += 1
        elif b.y <= pt.y and cross(a, b, pt) < 0:
            wn -= 1
    return wn


def _oracle_point_class(pt: Point, poly) -> str:
    for i in range(poly.n):
        a, b = poly.edge(i)
        if on_segment(pt, a, b):
            return "on"
    return "in" if _oracle_winding(pt, poly) != 0 else "out"


def _oracle_pair_visible(poly, i: int, j: int) -> bool:
    """Independent route: parametric clipping plus winding-number tests."""
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
                    return False  # transversal crossing, blocked outright
                params.add(t)
        elif ac.x * ab.y - ac.y * ab.x == 0:
            # collinear edge: clip its endpoints onto the segment
            for q in (c, d):
                t = (q.x - a.x) / ab.x if ab.x != 0 else (q.y - a.y) / ab.y
                if 0 <= t <= 1:
                    params.add(t)
    ts = sorted(params)
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        mid = Point(a.x + ab.x * tm, a.y + ab.y * tm)
        if _oracle_point_class(mid, poly) == "out":
            return False
    return True


def _oracle_visibility_edges(poly) -> set[tuple[int, int]]:
    return {(i, j) for i in range(poly.n) for j in range(i + 1, poly.n)
            if _oracle_pair_visible(poly, i, j)}


# ---------------------------------------------------------------- the thirteen checks

def _family_lower_bound(inst, want_n: int):
    g = inst.graph
    if g.n != want_n:
        return False, {"n": g.n, "note": f"expected {want_n} vertices"}
    res = game_number(g, Variant.ZOMBIES, Mode.CHOSEN, k_max=1)
    table = solve_game(g, Variant.ZOMBIES, 1)
    losing = sum(1 for r in range(table.placement_count)
                 if not table.placement_wins(r))
    ok = not res.found and losing == table.placement_count
    return ok, {"n": g.n, "result": str(res), "placements": table.placement_count,
                "losing_placements": losing}


def _check_star_lower_bound(seed: int):
    return _family_lower_bound(gk_star(2), 47)


def _check_clique_lower_bound(seed: int):
    return _family_lower_bound(gk_clique(2), 30)


def _check_scripted_evasion(seed: int):
    inst = gk_star(2)
    g = inst.graph
    table = solve_game(g, Variant.ZOMBIES, 1)
    limit = g.n * g.n + 10  # a surviving run must revisit a state by then
    latest_repeat = 0
    for p in range(g.n):
        evader = ScriptedEvader(inst, free_component(inst, (p,)))
        trace = play_match(g, Variant.ZOMBIES, 1, TablePursuerPolicy(table),
                           evader, round_limit=limit, pursuer_placement=(p,))
        if trace.captured:
            return False, {"placement": p, "captured_at": trace.capture_round}
        seen = {(trace.pursuer_start, trace.evader_start)}
        repeat = None
        for row in trace.rows:
            if row.mover != "E":
                continue
            key = (row.positions, row.evader)
            if key in seen:
                repeat = row.round
                break
            seen.add(key)
        if repeat is None:
            # both policies are memoryless, so this cannot happen in a
            # full pigeonhole window; report it rather than trust it
            return False, {"placement": p, "note": "no repeated state found"}
        latest_repeat = max(latest_repeat, repeat)
    return True, {"placements": g.n, "rounds_each": limit,
                  "latest_first_repeat": latest_repeat}


def _check_small_ground_truths(seed: int):
    cases = []
    for n in (3, 5, 7):
        g = build_graph(n, clique_edges(n))
        cases.append((f"cops on K{n}",
                      game_number(g, Variant.COPS, Mode.CHOSEN, 1).value, 1))
        cases.append((f"zombies on K{n}",
                      game_number(g, Variant.ZOMBIES, Mode.CHOSEN, 1).value, 1))
    for n in (4, 5, 6, 7):
        g = build_graph(n, cycle_edges(n))
        cases.append((f"cops on C{n}",
                      game_number(g, Variant.COPS, Mode.CHOSEN, 2).value, 2))
        cases.append((f"zombies on C{n}",
                      game_number(g, Variant.ZOMBIES, Mode.CHOSEN, 2).value, 2))
    for n in (5, 6, 7):
        g = build_graph(n, cycle_edges(n))
        res = game_number(g, Variant.ZOMBIES, Mode.ADVERSARIAL, 3)
        cases.append((f"adversarial zombies on C{n}", str(res), "NONE_UP_TO(3)"))
    bad = [f"{label}: got {got}, want {want}"
           for label, got, want in cases if got != want]
    return not bad, {"cases": len(cases), "mismatches": bad}


def _check_number_hierarchy(seed: int):
    kinds = (("c", Variant.COPS, Mode.CHOSEN),
             ("z_L", LAZY, Mode.CHOSEN),
             ("z", Variant.ZOMBIES, Mode.CHOSEN),
             ("u_L", LAZY, Mode.ADVERSARIAL),
             ("u", Variant.ZOMBIES, Mode.ADVERSARIAL))
    chains = (("c", "z_L"), ("z_L", "z"), ("z", "u"), ("z_L", "u_L"), ("u_L", "u"))
    k_max = 3
    rng = random.Random(seed)
    violations: list[dict] = []
    over = skipped = 0
    for _ in range(300):
        g = _random_connected(rng.randint(2, 7), rng)
        vals = {}
        for name, variant, mode in kinds:
            res = game_number(g, variant, mode, k_max=k_max)
            vals[name] = res.value if res.found else k_max + 1  # stands for ">3"
        over += sum(1 for v in vals.values() if v > k_max)
        for a, b in chains:
            if vals[a] > k_max and vals[b] > k_max:
                skipped += 1  # both undetermined, nothing to compare
            elif vals[a] > vals[b]:
                violations.append({"edges": list(g.edges), "pair": f"{a} <= {b}",
                                   "values": dict(vals)})
    return not violations, {"graphs": 300, "k_max": k_max,
                            "values_over_k_max": over, "skipped_pairs": skipped,
                            "violations": violations[:3]}


def _check_outerplanar_two(seed: int):
    rng = random.Random(seed)
    graphs = [build_graph(n, fan_edges(n)) for n in range(4, 13)]
    for _ in range(100):
        n = rng.randint(3, 12)
        graphs.append(build_graph(n, random_outerplanar_edges(n, rng)))
    slowest, worst_ratio = 0, 0.0
    for g in graphs:
        table = solve_game(g, LAZY, 2)
        trace = play_match(g, LAZY, 2, outerplanar_lazy_policy(g),
                           TableEvaderPolicy(table), round_limit=2 * g.n)
        if not trace.captured or trace.capture_round >= 2 * g.n:
            return False, {"edges": list(g.edges), "outcome": trace.outcome,
                           "round": trace.capture_round}
        num = game_number(g, LAZY, Mode.CHOSEN, 2)
        if not num.found:
            return False, {"edges": list(g.edges),
                           "note": "two lazy zombies do not suffice"}
        slowest = max(slowest, trace.capture_round)
        worst_ratio = max(worst_ratio, trace.capture_round / (2 * g.n))
    return True, {"instances": len(graphs), "slowest_capture": slowest,
                  "worst_round_ratio": round(worst_ratio, 3)}


def _check_outerplanar_any_start(seed: int):
    matches = slowest = 0
    for n in range(4, 9):
        g = build_graph(n, fan_edges(n))
        table = solve_game(g, LAZY, 2)
        for pair in combinations_with_replacement(range(g.n), 2):
            trace = play_match(g, LAZY, 2, outerplanar_universal_lazy_policy(g),
                               TableEvaderPolicy(table), round_limit=2000,
                               pursuer_placement=pair)
            if not trace.captured:
                return False, {"n": n, "start": list(pair), "outcome": trace.outcome}
            matches += 1
            slowest = max(slowest, trace.capture_round)
    return True, {"matches": matches, "slowest_capture": slowest}


def _check_load_equals_treedepth(seed: int):
    rng = random.Random(seed)
    for _ in range(200):
        g = _random_connected(rng.randint(2, 8), rng)
        td, tree = treedepth(g)
        d = td_tree_to_cut_decomposition(tree)
        report = validate_cut_decomposition(g, d)
        if not report.ok:
            return False, {"edges": list(g.edges), "reason": report.reason}
        if load(d) != td:
            return False, {"edges": list(g.edges), "load": load(d), "treedepth": td}
    for _ in range(200):
        g = _random_connected(rng.randint(2, 8), rng)
        d = random_cut_decomposition(g, rng)
        report = validate_cut_decomposition(g, d)
        if not report.ok:
            return False, {"edges": list(g.edges), "reason": report.reason}
        witness = cut_decomposition_to_td_tree(d)
        validate_treedepth_tree(g, witness)  # raises if the unrolling breaks
        td = treedepth(g)[0]
        if not td <= witness.vertex_height() <= load(d):
            return False, {"edges": list(g.edges), "treedepth": td,
                           "witness_depth": witness.vertex_height(),
                           "load": load(d)}
    return True, {"optimal_conversions": 200, "random_decompositions": 200}


def _check_cut_strategy(seed: int):
    instances = _pinning_instances(seed)
    if len(instances) < 100:
        return False, {"instances": len(instances), "note": "sampling starved"}
    slowest = largest_bound = 0
    for g, d, td in instances:
        pol = cut_decomp_zombie_policy(g, d)
        if pol.k != load(d) or load(d) != td:
            return False, {"edges": list(g.edges), "k": pol.k,
                           "load": load(d), "treedepth": td}
        bound = time_bound(d, g)
        cap = (d.cdw * (diameter(g) - 1) + 1) ** (d.height() + 1)
        if bound > cap:
            return False, {"edges": list(g.edges), "time": bound, "cap": cap}
        table = solve_game(g, LAZY, pol.k)
        trace = play_match(g, LAZY, pol.k, pol, TableEvaderPolicy(table),
                           round_limit=bound + 1)
        if not trace.captured or trace.capture_round > bound + 1:
            return False, {"edges": list(g.edges), "outcome": trace.outcome,
                           "round": trace.capture_round, "bound": bound}
        slowest = max(slowest, trace.capture_round)
        largest_bound = max(largest_bound, bound)
    return True, {"instances": len(instances), "slowest_capture": slowest,
                  "largest_time_bound": largest_bound}


def _check_clique_cover_strategy(seed: int):
    for n in range(2, 9):
        g = build_graph(n, clique_edges(n))
        d = CutDecomposition((-1,), (tuple(range(n)),))
        pol = clique_cover_zombie_policy(g, d)
        if pol.k != 1:
            return False, {"n": n, "k": pol.k,
                           "note": "a single clique should need one zombie"}
        table = solve_game(g, LAZY, 1)
        trace = play_match(g, LAZY, 1, pol, TableEvaderPolicy(table), round_limit=4)
        if not trace.captured or trace.capture_round > 2:
            return False, {"n": n, "outcome": trace.outcome,
                           "round": trace.capture_round}
    instances = _pinning_instances(seed)
    if len(instances) < 100:
        return False, {"instances": len(instances), "note": "sampling starved"}
    slowest = saved = 0
    for g, d, td in instances:
        ls, ld = load_star(g, d), load(d)
        if ls > ld:
            return False, {"edges": list(g.edges), "load_star": ls, "load": ld}
        saved += ld - ls
        pol = clique_cover_zombie_policy(g, d)
        if pol.k != ls:
            return False, {"edges": list(g.edges), "k": pol.k, "load_star": ls}
        bound = time_star_bound(g, d)
        table = solve_game(g, LAZY, pol.k)
        trace = play_match(g, LAZY, pol.k, pol, TableEvaderPolicy(table),
                           round_limit=bound + 1)
        if not trace.captured or trace.capture_round > bound + 1:
            return False, {"edges": list(g.edges), "outcome": trace.outcome,
                           "round": trace.capture_round, "bound": bound}
        slowest = max(slowest, trace.capture_round)
    return True, {"cliques": 7, "instances": len(instances),
                  "slowest_capture": slowest, "zombies_saved_total": saved}


def _check_separator_chain(seed: int):
    expected = {2: 1, 3: 2, 4: 6, 5: 21, 6: 112}  # known census of classes
    counts: dict[int, int] = {}
    bad: list[dict] = []
    for n in range(2, 7):
        classes = _connected_classes(n)
        counts[n] = len(classes)
        for g in classes:
            rep = check_lemma2(g)
            if not rep.ok:
                bad.append({"edges": list(g.edges), "s_n": rep.s_n, "td": rep.td,
                            "sigma": rep.sigma, "tw": rep.tw})
    ok = counts == expected and not bad
    return ok, {"graphs_by_order": counts, "violations": bad[:3]}


def _check_visibility_graphs(seed: int):
    for n in range(4, 9):
        poly = build_polygon([(i, i * i) for i in range(n)])  # convex position
        got = visibility_graph(poly).m
        if got != n * (n - 1) // 2:
            return False, {"n": n, "edges": got,
                           "note": "convex polygon must give a complete graph"}
    rng = random.Random(seed)
    for _ in range(20):
        poly = random_simple_polygon(rng.randint(4, 12), rng)
        n = poly.n
        edges = set(visibility_graph(poly).edges)
        want = _oracle_visibility_edges(poly)
        if edges != want:
            return False, {"polygon": poly.to_json(),
                           "missing": sorted(want - edges),
                           "extra": sorted(edges - want)}
        flipped = build_polygon([(p.x, p.y) for p in reversed(poly.vertices)])
        back = {tuple(sorted((n - 1 - a, n - 1 - b)))
                for a, b in visibility_graph(flipped).edges}
        if back != edges:
            return False, {"polygon": poly.to_json(),
                           "note": "orientation reversal changed the graph"}
        scaled = build_polygon([(3 * p.x, 3 * p.y) for p in poly.vertices])
        if set(visibility_graph(scaled).edges) != edges:
            return False, {"polygon": poly.to_json(),
                           "note": "scaling changed the graph"}
    return True, {"convex": 5, "random_polygons": 20}


def _check_solver_oracle(seed: int):
    graphs = [g for n in range(1, 6) for g in _connected_classes(n)]
    if len(graphs) != 31:
        return False, {"graphs": len(graphs), "note": "census mismatch"}
    states = 0
    for g in graphs:
        for variant in (Variant.COPS, Variant.ZOMBIES, LAZY):
            table = solve_game(g, variant, 1)
            status, times = minimax_reference(g, variant, 1)
            if not (np.array_equal(table.status, status)
                    and np.array_equal(table.times, times)):
                return False, {"edges": list(g.edges), "variant": variant.value}
            states += int(table.status.size)
    return True, {"graphs": len(graphs), "variants": 3, "states_compared": states}


# ---------------------------------------------------------------- registry and runner

@dataclass(frozen=True)
class _Check:
    id: str
    anchor: str
    claim: str
    fn: Callable[[int], tuple[bool, dict]]


CHECKS: tuple[_Check, ...] = (
    _Check("star-family-lower-bound", "thm1",
           "one zombie loses from every placement on the 47-vertex hub family",
           _check_star_lower_bound),
    _Check("clique-family-lower-bound", "thm3",
           "one zombie loses from every placement on the 30-vertex terminal-clique family",
           _check_clique_lower_bound),
    _Check("scripted-evasion", "thm1",
           "the scripted runner survives the optimal single zombie forever",
           _check_scripted_evasion),
    _Check("small-ground-truths", "ground-truths",
           "cop and zombie numbers of small cliques and cycles match known values",
           _check_small_ground_truths),
    _Check("number-hierarchy", "hierarchy",
           "pursuit numbers respect c <= z_L <= z <= u and z_L <= u_L <= u",
           _check_number_hierarchy),
    _Check("outerplanar-two-zombies", "thm6",
           "two lazy zombies clear outerplanar graphs in under 2n rounds",
           _check_outerplanar_two),
    _Check("outerplanar-any-start", "cor1",
           "two lazy zombies clear fans from every starting pair",
           _check_outerplanar_any_start),
    _Check("load-equals-treedepth", "thm8",
           "optimal decompositions carry exactly treedepth load and any valid load bounds it",
           _check_load_equals_treedepth),
    _Check("cut-strategy-time-bound", "thm7",
           "treedepth many lazy zombies win within the recursive round bound",
           _check_cut_strategy),
    _Check("clique-cover-strategy", "thm9",
           "clique-cover squads win within their round bound using fewer zombies",
           _check_clique_cover_strategy),
    _Check("separator-chain", "lemma2",
           "separator sizes sandwich treedepth under the treewidth-log bound",
           _check_separator_chain),
    _Check("visibility-graphs", "visibility",
           "visibility graphs match a brute-force oracle and its invariances",
           _check_visibility_graphs),
    _Check("solver-oracle", "solver-oracle",
           "the retrograde solver agrees with explicit minimax on every small graph",
           _check_solver_oracle),
)


# the lower-bound trio shares one construction, so its tag selects all three
_GROUPS: dict[str, tuple[str, ...]] = {
    "thm1": ("star-family-lower-bound", "clique-family-lower-bound",
             "scripted-evasion"),
}


def suite_ids() -> tuple[str, ...]:
    return tuple(c.id for c in CHECKS)


def suite_selectors() -> tuple[str, ...]:
    """Everything `--suite` accepts: check ids plus anchor tags."""
    tags = []
    for c in CHECKS:
        for token in (c.id, c.anchor):
            if token not in tags:
                tags.append(token)
    return tuple(tags)


def _resolve_selection(selectors) -> set[str]:
    wanted: set[str] = set()
    for token in selectors:
        hits = {c.id for c in CHECKS if token in (c.id, c.anchor)}
        hits.update(_GROUPS.get(token, ()))
        if not hits:
            raise ValueError(f"unknown suite selector {token!r}")
        wanted |= hits
    return wanted


def run_check(check_id: str, seed: int = 0) -> CheckResult:
    spec = next((c for c in CHECKS if c.id == check_id), None)
    if spec is None:
        raise ValueError(f"unknown check {check_id!r}")
    start = time.perf_counter()
    try:
        ok, measured = spec.fn(seed)
    except Exception as exc:  # a crashed check is a failed check, loudly
        ok, measured = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(spec.id, spec.anchor, spec.claim,
                       "PASS" if ok else "FAIL", measured,
                       round(time.perf_counter() - start, 3))


def run_suite(selectors=None, seed: int = 0, on_result=None) -> list[CheckResult]:
    """Run the acceptance checks; unselected ones are reported as SKIPPED.

    The report always lists all thirteen claims exactly once.
    """
    wanted = _resolve_selection(selectors) if selectors else {c.id for c in CHECKS}
    results = []
    for c in CHECKS:
        if c.id in wanted:
            res = run_check(c.id, seed)
        else:
            res = CheckResult(c.id, c.anchor, c.claim, "SKIPPED", {}, 0.0)
        results.append(res)
        if on_result is not None:
            on_result(res)
    return results
