"""Command-line front end.

Six subcommands cover the package surface: ``gen`` writes graph
families, ``solve`` computes game numbers, ``play`` runs policy matches
and emits JSONL traces, ``decomp`` handles elimination trees and
container decompositions, ``visgraph`` turns simple polygons into
visibility graphs, and ``verify`` replays the acceptance suite.

Output is deterministic given the arguments and seeds, JSON is
canonically ordered, and the exit code tells the caller what happened:
0 success, 1 usage or input error, 2 resource limit, 3 failed check or
policy violation, 4 match stopped by the round limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .decomposition import (
    CutDecomposition,
    check_lemma2,
    clique_cover_number,
    load,
    load_star,
    td_tree_to_cut_decomposition,
    time_bound,
    time_star_bound,
    treedepth,
    treewidth_exact,
    validate_cut_decomposition,
)
from .engine import Variant, play_match
from .errors import (
    BudgetExceededError,
    DecompositionError,
    IllegalMoveError,
    PolygonError,
    PursuitError,
    StrategyError,
    TooLargeError,
)
from .families import (
    STANDARD_KINDS,
    GkInstance,
    ScriptedEvader,
    free_component,
    gk_clique,
    gk_star,
    gk_tree,
    standard_graph,
)
from .geometry import load_polygon, validate_simple_polygon, visibility_graph
from .graphs import diameter, load_graph, save_graph
from .solver import (
    Mode,
    TableEvaderPolicy,
    TablePursuerPolicy,
    game_number,
    solve_game,
)
from .strategies import (
    clique_cover_zombie_policy,
    cut_decomp_zombie_policy,
    outerplanar_lazy_policy,
    outerplanar_universal_lazy_policy,
)
from .verify import run_suite, suite_selectors

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_FAIL = 3
EXIT_ROUND_LIMIT = 4

_GK_KINDS = ("gk-star", "gk-clique", "gk-tree")
_VARIANT_CHOICES = ("cops", "zombies", "lazy", "lazy-zombies")
_PURSUER_POLICIES = ("optimal", "thm6", "cor1", "thm7", "thm9")
_EVADER_POLICIES = ("optimal", "script-evasion")


class _UsageError(Exception):
    """Bad arguments detected past argparse; exits with code 1."""


def _variant(token: str) -> Variant:
    return Variant.parse("lazy-zombies" if token == "lazy" else token)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------- gen

def _sidecar_path(out: str) -> str:
    stem = out[:-5] if out.endswith(".json") else out
    return stem + ".sidecar.json"


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind in _GK_KINDS:
        if args.k is None:
            raise _UsageError(f"{kind} needs --k")
        if args.n is not None:
            raise _UsageError(f"{kind} takes --k, not --n")
        if kind == "gk-tree":
            if args.a_star is not None:
                raise _UsageError("gk-tree derives its path length from --k")
            inst = gk_tree(args.k)
        else:
            maker = gk_star if kind == "gk-star" else gk_clique
            inst = maker(args.k) if args.a_star is None else maker(args.k, args.a_star)
        g, sidecar = inst.graph, inst.sidecar()
    else:
        if args.n is None:
            raise _UsageError(f"{kind} needs --n")
        if args.k is not None or args.a_star is not None:
            raise _UsageError(f"{kind} takes --n, not --k/--a-star")
        g = standard_graph(kind, args.n, seed=args.seed)
        sidecar = {"kind": kind, "n": args.n}
        if kind.startswith("rand-"):
            sidecar["seed"] = args.seed
        elif kind == "fan":
            sidecar["apex"] = args.n - 1
        elif kind == "path":
            sidecar["ends"] = [0, args.n - 1]
    if args.out is None:
        print(_dump({"graph": g.to_json(), "sidecar": sidecar}))
        return EXIT_OK
    save_graph(g, args.out)
    side_path = args.sidecar_out or _sidecar_path(args.out)
    _emit(_dump(sidecar), side_path)
    print(f"wrote {args.out} ({g.n} vertices, {g.m} edges) and {side_path}")
    return EXIT_OK


# ---------------------------------------------------------------- solve

def _cmd_solve(args) -> int:
    g = load_graph(args.graph)
    res = game_number(g, _variant(args.variant), Mode(args.mode), args.k_max,
                      budget=args.budget, backend=args.backend)
    if args.json:
        print(_dump(res.to_json()))
    else:
        print(str(res))
        if res.witness is not None:
            print("witness " + json.dumps(res.witness, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------- play

class _ScriptEvasion:
    """Scripted runner that picks a pursuer-free block at placement time."""

    def __init__(self, inst: GkInstance):
        self.inst = inst
        self._impl: ScriptedEvader | None = None

    def place(self, g, pursuers) -> int:
        i = free_component(self.inst, pursuers)
        if i is None:
            raise StrategyError("every block holds a pursuer; no safe start")
        self._impl = ScriptedEvader(self.inst, i)
        return self._impl.place(g, pursuers)

    def move(self, g, d, state) -> int:
        assert self._impl is not None
        return self._impl.move(g, d, state)


def _parse_placements(text: str, n: int, k: int) -> tuple[int, ...]:
    try:
        verts = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise _UsageError(f"--placements wants comma-separated integers, got {text!r}")
    if len(verts) != k:
        raise _UsageError(f"--placements lists {len(verts)} vertices for k={k}")
    bad = [v for v in verts if not 0 <= v < n]
    if bad:
        raise _UsageError(f"--placements vertices {bad} outside 0..{n - 1}")
    return verts


def _load_decomposition(g, path: str | None) -> CutDecomposition:
    if path is None:
        _, tree = treedepth(g)
        return td_tree_to_cut_decomposition(tree)
    d = CutDecomposition.from_json(_read_text(path))
    report = validate_cut_decomposition(g, d)
    if not report.ok:
        raise DecompositionError(report.reason)
    return d


def _cmd_play(args) -> int:
    g = load_graph(args.graph)
    variant = _variant(args.variant)
    k = args.k
    placement = (_parse_placements(args.placements, g.n, k)
                 if args.placements is not None else None)

    tables: dict[int, object] = {}

    def table(kk: int):
        if kk not in tables:
            tables[kk] = solve_game(g, variant, kk,
                                    budget=args.budget, backend=args.backend)
        return tables[kk]

    if args.pursuer == "optimal":
        pursuer = TablePursuerPolicy(table(k))
    elif args.pursuer == "thm6":
        pursuer = outerplanar_lazy_policy(g)
    elif args.pursuer == "cor1":
        pursuer = outerplanar_universal_lazy_policy(g)
    else:
        d = _load_decomposition(g, args.decomp)
        if args.pursuer == "thm7":
            pursuer = cut_decomp_zombie_policy(g, d)
        else:
            pursuer = clique_cover_zombie_policy(g, d)
        if pursuer.k != k:
            raise _UsageError(
                f"{args.pursuer} fields {pursuer.k} pursuers on this decomposition, got --k {k}")

    if args.evader == "optimal":
        evader = TableEvaderPolicy(table(k))
    else:
        if args.sidecar is None:
            raise _UsageError("script-evasion needs --sidecar from `gen gk-*`")
        inst = GkInstance.from_json(_read_text(args.sidecar))
        if inst.graph.n != g.n or inst.graph.edges != g.edges:
            raise _UsageError("sidecar does not describe this graph")
        evader = _ScriptEvasion(inst)

    trace = play_match(g, variant, k, pursuer, evader,
                       round_limit=args.rounds, pursuer_placement=placement)
    if args.json:
        obj = {
            "variant": trace.variant.value,
            "k": trace.k,
            "n": trace.n,
            "placements": {"pursuers": list(trace.pursuer_start),
                           "evader": trace.evader_start},
            "rows": [asdict(r) for r in trace.rows],
            "outcome": trace.outcome,
            "capture_round": trace.capture_round,
            "rounds_played": trace.rounds_played,
        }
        _emit(_dump(obj), args.out)
    else:
        _emit(trace.to_jsonl(), args.out)
        if args.out is not None:
            where = (f"round {trace.capture_round}" if trace.captured
                     else f"after {trace.rounds_played} rounds")
            print(f"{trace.outcome} {where}, trace in {args.out}")
    return EXIT_OK if trace.captured else EXIT_ROUND_LIMIT


# ---------------------------------------------------------------- decomp

def _load_report(g, d: CutDecomposition) -> dict:
    delta = diameter(g)
    height = d.height()
    theta_w = max(clique_cover_number(g, c) for c in d.containers)
    t = time_bound(d, g)
    ts = time_star_bound(g, d)
    time_cap = (d.cdw * (delta - 1) + 1) ** (height + 1)
    time_star_cap = (theta_w * delta + 1) ** (height + 1)
    return {
        "nodes": d.node_count,
        "height": height,
        "diameter": delta,
        "cdw": d.cdw,
        "clique_cover_width": theta_w,
        "load": load(d),
        "load_star": load_star(g, d),
        "time": t,
        "time_cap": time_cap,
        "time_within_cap": t <= time_cap,
        "time_star": ts,
        "time_star_cap": time_star_cap,
        "time_star_within_cap": ts <= time_star_cap,
    }


def _cmd_decomp(args) -> int:
    g = load_graph(args.graph)
    what = args.what
    if what != "load" and args.decomp is not None:
        raise _UsageError(f"--decomp only applies to `decomp ... load`, not {what}")
    if what == "treedepth":
        value, tree = treedepth(g)
        if args.json:
            print(_dump({"treedepth": value, "tree": json.loads(tree.to_json())}))
        else:
            print(value)
            print("tree " + tree.to_json())
        return EXIT_OK
    if what == "treewidth":
        value = treewidth_exact(g)
        print(_dump({"treewidth": value}) if args.json else value)
        return EXIT_OK
    if what == "lemma2":
        rep = check_lemma2(g)
        status = "PASS" if rep.ok else "FAIL"
        if args.json:
            obj = asdict(rep)
            obj["sigma_terms"] = list(rep.sigma_terms)
            obj["status"] = status
            print(_dump(obj))
        else:
            print(f"s({rep.n})={rep.s_n} <= td={rep.td} <= sigma={rep.sigma}"
                  f" <= (tw+1)log2(n) with tw={rep.tw}: {status}")
        return EXIT_OK if rep.ok else EXIT_FAIL
    # what == "load"
    d = _load_decomposition(g, args.decomp)
    report = _load_report(g, d)
    report["source"] = "file" if args.decomp is not None else "treedepth"
    if args.json:
        print(_dump(report))
    else:
        for key in ("load", "load_star", "time", "time_cap", "time_star",
                    "time_star_cap", "cdw", "clique_cover_width", "height"):
            print(f"{key} {report[key]}")
    ok = report["time_within_cap"] and report["time_star_within_cap"]
    if not ok:
        print("BOUND_VIOLATION: computed time exceeds its cap", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- visgraph

def _cmd_visgraph(args) -> int:
    poly = load_polygon(args.polygon)
    report = validate_simple_polygon(poly)
    if not report.ok:
        raise PolygonError(report.reason)
    g = visibility_graph(poly)
    _emit(_dump(g.to_json()), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- verify

def _cmd_verify(args) -> int:
    quiet = bool(args.json)

    def progress(res) -> None:
        if quiet:
            return
        line = f"{res.status:<8}{res.id:<28}{res.runtime_s:9.3f}s"
        if res.status == "FAIL":
            line += "  " + json.dumps(res.measured, sort_keys=True)
        print(line, flush=True)

    results = run_suite(args.suite or None, seed=args.seed, on_result=progress)
    failed = sum(r.status == "FAIL" for r in results)
    if args.json:
        print(_dump({"seed": args.seed, "results": [r.to_json() for r in results]}))
    else:
        passed = sum(r.status == "PASS" for r in results)
        skipped = sum(r.status == "SKIPPED" for r in results)
        print(f"{passed} passed, {failed} failed, {skipped} skipped")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pursuit",
        description="Pursuit games on graphs: generate, solve, play, check.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family member")
    p.add_argument("kind", choices=_GK_KINDS + STANDARD_KINDS)
    p.add_argument("--n", type=int, help="vertex count (standard kinds)")
    p.add_argument("--k", type=int, help="block count (gk-* kinds)")
    p.add_argument("--a-star", dest="a_star", type=int,
                   help="block path length (gk-star, gk-clique)")
    p.add_argument("--seed", type=int, default=0, help="rng seed (rand-* kinds)")
    p.add_argument("--out", help="graph file; sidecar lands beside it")
    p.add_argument("--sidecar-out", help="override the sidecar path")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="compute a game number")
    p.add_argument("graph")
    p.add_argument("--variant", required=True, choices=_VARIANT_CHOICES)
    p.add_argument("--mode", choices=("chosen", "adversarial"), default="chosen")
    p.add_argument("--k-max", dest="k_max", type=int, default=3)
    p.add_argument("--budget", type=int, help="state budget override")
    p.add_argument("--backend", choices=("python", "compiled"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("play", help="run one match and emit its trace")
    p.add_argument("graph")
    p.add_argument("--variant", required=True, choices=_VARIANT_CHOICES)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--pursuer", required=True, choices=_PURSUER_POLICIES)
    p.add_argument("--evader", required=True, choices=_EVADER_POLICIES)
    p.add_argument("--placements", help="comma-separated pursuer start vertices")
    p.add_argument("--rounds", type=int, default=300, help="round limit")
    p.add_argument("--decomp", help="container decomposition for thm7/thm9")
    p.add_argument("--sidecar", help="family sidecar for script-evasion")
    p.add_argument("--budget", type=int)
    p.add_argument("--backend", choices=("python", "compiled"))
    p.add_argument("--out", help="write the trace here instead of stdout")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("decomp", help="treedepth, treewidth, bounds")
    p.add_argument("graph")
    p.add_argument("what", choices=("treedepth", "treewidth", "load", "lemma2"))
    p.add_argument("--decomp", help="container decomposition file (load)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decomp)

    p = sub.add_parser("visgraph", help="visibility graph of a simple polygon")
    p.add_argument("polygon")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_visgraph)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", action="append", metavar="TAG",
                   help=f"restrict to a check or tag; one of: {', '.join(suite_selectors())}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def _report(code: int, tag: str, exc: Exception) -> int:
    print(f"{tag}: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        return _report(EXIT_RESOURCE, "STATE_BUDGET_EXCEEDED", exc)
    except TooLargeError as exc:
        return _report(EXIT_RESOURCE, "TOO_LARGE", exc)
    except IllegalMoveError as exc:
        return _report(EXIT_FAIL, "POLICY_ILLEGAL_MOVE", exc)
    except StrategyError as exc:
        return _report(EXIT_FAIL, "POLICY_FAILED", exc)
    except PolygonError as exc:
        return _report(EXIT_FAIL, "INVALID_POLYGON", exc)
    except DecompositionError as exc:
        return _report(EXIT_FAIL, "INVALID_DECOMPOSITION", exc)
    except _UsageError as exc:
        return _report(EXIT_USAGE, "ERROR", exc)
    except (PursuitError, ValueError, OSError) as exc:
        return _report(EXIT_USAGE, "ERROR", exc)


if __name__ == "__main__":
    raise SystemExit(main())
