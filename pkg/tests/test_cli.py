"""End-to-end command line behaviour, driven through main(argv)."""

import json

import pytest

from pursuit.cli import main
from pursuit.engine import Trace, replay_trace
from pursuit.geometry import random_simple_polygon, save_polygon, visibility_graph
from pursuit.graphs import load_graph

import random


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def ws(tmp_path_factory):
    """Shared workspace of generated input files."""
    root = tmp_path_factory.mktemp("cli")
    paths = {}
    for name, argv in {
        "gk2": ("gen", "gk-star", "--k", "2"),
        "c5": ("gen", "cycle", "--n", "5"),
        "k5": ("gen", "clique", "--n", "5"),
        "k6": ("gen", "clique", "--n", "6"),
        "fan8": ("gen", "fan", "--n", "8"),
        "p7": ("gen", "path", "--n", "7"),
    }.items():
        out = root / f"{name}.json"
        assert main([*argv, "--out", str(out)]) == 0
        paths[name] = str(out)
        paths[name + ".sidecar"] = str(root / f"{name}.sidecar.json")
    hexagon = root / "hex.json"
    hexagon.write_text(json.dumps(
        {"vertices": [[0, 0], [4, 0], [6, 3], [4, 6], [0, 6], [-2, 3]]}))
    paths["hex"] = str(hexagon)
    bowtie = root / "bowtie.json"
    bowtie.write_text(json.dumps({"vertices": [[0, 0], [4, 4], [4, 0], [0, 4]]}))
    paths["bowtie"] = str(bowtie)
    paths["root"] = str(root)
    return paths


class TestGen:
    def test_star_family_shape(self, ws):
        g = load_graph(ws["gk2"])
        assert g.n == 47
        sidecar = json.loads(open(ws["gk2.sidecar"]).read())
        assert sidecar["kind"] == "star"
        assert sidecar["k"] == 2
        assert sidecar["center"] == 46
        assert len(sidecar["components"]) == 2

    def test_tree_family_path_length(self, capsys):
        code, out, _ = run(capsys, "gen", "gk-tree", "--k", "4")
        assert code == 0
        obj = json.loads(out)
        assert obj["sidecar"]["a_star"] == 26

    def test_standard_graph_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "fan", "--n", "8")
        assert code == 0
        obj = json.loads(out)
        assert obj["graph"]["n"] == 8
        assert len(obj["graph"]["edges"]) == 13
        assert obj["sidecar"]["apex"] == 7

    def test_random_kind_is_seed_deterministic(self, capsys):
        first = run(capsys, "gen", "rand-outerplanar", "--n", "12", "--seed", "9")
        second = run(capsys, "gen", "rand-outerplanar", "--n", "12", "--seed", "9")
        other = run(capsys, "gen", "rand-outerplanar", "--n", "12", "--seed", "10")
        assert first == second
        assert first[1] != other[1]

    def test_usage_errors(self, capsys):
        assert run(capsys, "gen", "gk-star")[0] == 1
        assert run(capsys, "gen", "cycle")[0] == 1
        assert run(capsys, "gen", "gk-star", "--k", "2", "--n", "5")[0] == 1
        assert run(capsys, "gen", "gk-tree", "--k", "2", "--a-star", "9")[0] == 1
        assert run(capsys, "gen", "moebius", "--n", "5")[0] == 1


class TestSolve:
    def test_cycle_needs_two_chosen_zombies(self, capsys, ws):
        code, out, _ = run(capsys, "solve", ws["c5"], "--variant", "zombies",
                           "--mode", "chosen")
        assert code == 0
        assert out.splitlines()[0] == "2"

    def test_clique_needs_one(self, capsys, ws):
        code, out, _ = run(capsys, "solve", ws["k6"], "--variant", "zombies")
        assert code == 0
        assert out.splitlines()[0] == "1"

    def test_adversarial_cycle_exceeds_three(self, capsys, ws):
        code, out, _ = run(capsys, "solve", ws["c5"], "--variant", "zombies",
                           "--mode", "adversarial", "--k-max", "3", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["value"] is None
        assert obj["display"] == "NONE_UP_TO(3)"
        assert obj["witness"]["evader"] is not None

    def test_lazy_alias(self, capsys, ws):
        code, out, _ = run(capsys, "solve", ws["c5"], "--variant", "lazy", "--json")
        assert code == 0
        assert json.loads(out)["variant"] == "lazy-zombies"

    def test_budget_flag(self, capsys, ws):
        code, _, err = run(capsys, "solve", ws["c5"], "--variant", "zombies",
                           "--budget", "10")
        assert code == 2
        assert "STATE_BUDGET_EXCEEDED" in err

    def test_budget_env(self, capsys, ws, monkeypatch):
        monkeypatch.setenv("PURSUIT_STATE_BUDGET", "10")
        code, _, err = run(capsys, "solve", ws["c5"], "--variant", "zombies")
        assert code == 2
        assert "STATE_BUDGET_EXCEEDED" in err

    def test_missing_file(self, capsys, ws):
        code, _, err = run(capsys, "solve", ws["root"] + "/nope.json",
                           "--variant", "zombies")
        assert code == 1
        assert err.startswith("ERROR")


class TestPlay:
    def test_sweep_captures_fan_quickly(self, capsys, ws):
        code, out, _ = run(capsys, "play", ws["fan8"], "--variant", "lazy",
                           "--k", "2", "--pursuer", "thm6", "--evader", "optimal")
        assert code == 0
        trace = Trace.from_jsonl(out)
        assert trace.captured
        assert trace.capture_round < 16
        replay_trace(load_graph(ws["fan8"]), trace)

    def test_script_evasion_hits_round_limit(self, capsys, ws):
        code, out, _ = run(capsys, "play", ws["gk2"], "--variant", "zombies",
                           "--k", "1", "--pursuer", "optimal",
                           "--evader", "script-evasion",
                           "--sidecar", ws["gk2.sidecar"], "--rounds", "300")
        assert code == 4
        trace = Trace.from_jsonl(out)
        assert not trace.captured
        assert trace.rounds_played == 300
        replay_trace(load_graph(ws["gk2"]), trace)

    def test_clique_cover_squad_on_clique(self, capsys, ws):
        code, out, _ = run(capsys, "play", ws["k5"], "--variant", "lazy",
                           "--k", "1", "--pursuer", "thm9", "--evader", "optimal")
        assert code == 0
        trace = Trace.from_jsonl(out)
        assert trace.capture_round <= 2

    def test_imposed_placements_json(self, capsys, ws):
        code, out, _ = run(capsys, "play", ws["c5"], "--variant", "zombies",
                           "--k", "2", "--pursuer", "optimal", "--evader", "optimal",
                           "--placements", "0,2", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["placements"]["pursuers"] == [0, 2]
        assert obj["outcome"] == "CAPTURE"
        assert obj["rows"][-1]["captured"] is True

    def test_trace_file_output(self, capsys, ws, tmp_path):
        dest = tmp_path / "t.jsonl"
        code, out, _ = run(capsys, "play", ws["fan8"], "--variant", "lazy",
                           "--k", "2", "--pursuer", "thm6", "--evader", "optimal",
                           "--out", dest)
        assert code == 0
        assert "CAPTURE" in out
        assert Trace.from_jsonl(dest.read_text()).captured

    def test_script_evasion_needs_sidecar(self, capsys, ws):
        code, _, err = run(capsys, "play", ws["gk2"], "--variant", "zombies",
                           "--k", "1", "--pursuer", "optimal",
                           "--evader", "script-evasion")
        assert code == 1
        assert "sidecar" in err

    def test_sidecar_graph_mismatch(self, capsys, ws):
        code, _, err = run(capsys, "play", ws["c5"], "--variant", "zombies",
                           "--k", "1", "--pursuer", "optimal",
                           "--evader", "script-evasion",
                           "--sidecar", ws["gk2.sidecar"])
        assert code == 1
        assert "sidecar" in err

    def test_squad_size_must_match_k(self, capsys, ws):
        code, _, err = run(capsys, "play", ws["fan8"], "--variant", "lazy",
                           "--k", "1", "--pursuer", "thm7", "--evader", "optimal")
        assert code == 1
        assert "--k" in err

    def test_stay_move_illegal_for_plain_zombies(self, capsys, ws):
        code, _, err = run(capsys, "play", ws["c5"], "--variant", "zombies",
                           "--k", "2", "--pursuer", "thm6", "--evader", "optimal")
        assert code == 3
        assert "POLICY_ILLEGAL_MOVE" in err

    def test_bad_placements(self, capsys, ws):
        args = ("play", ws["c5"], "--variant", "zombies", "--k", "2",
                "--pursuer", "optimal", "--evader", "optimal", "--placements")
        assert run(capsys, *args, "0")[0] == 1
        assert run(capsys, *args, "0,9")[0] == 1
        assert run(capsys, *args, "0,x")[0] == 1


class TestDecomp:
    def test_path_treedepth(self, capsys, ws):
        code, out, _ = run(capsys, "decomp", ws["p7"], "treedepth")
        assert code == 0
        assert out.splitlines()[0] == "3"
        code, out, _ = run(capsys, "decomp", ws["p7"], "treedepth", "--json")
        obj = json.loads(out)
        assert obj["treedepth"] == 3
        assert len(obj["tree"]["parent"]) == 7

    def test_cycle_treewidth(self, capsys, ws):
        code, out, _ = run(capsys, "decomp", ws["c5"], "treewidth", "--json")
        assert code == 0
        assert json.loads(out) == {"treewidth": 2}

    def test_separator_chain_on_clique(self, capsys, ws):
        code, out, _ = run(capsys, "decomp", ws["k5"], "lemma2")
        assert code == 0
        assert out.strip().endswith("PASS")

    def test_load_report_from_optimal_decomposition(self, capsys, ws):
        code, out, _ = run(capsys, "decomp", ws["c5"], "load", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["source"] == "treedepth"
        assert obj["load"] == 4  # treedepth of a 5-cycle
        assert obj["time_within_cap"] and obj["time_star_within_cap"]
        assert obj["load_star"] <= obj["load"]

    def test_load_report_from_file(self, capsys, ws, tmp_path):
        dfile = tmp_path / "d.json"
        dfile.write_text(json.dumps({"nodes": [
            {"id": 0, "parent": None, "container": [0, 1, 3]},
            {"id": 1, "parent": 0, "container": [2]},
            {"id": 2, "parent": 0, "container": [4]},
        ]}))
        code, out, _ = run(capsys, "decomp", ws["c5"], "load",
                           "--decomp", dfile, "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["source"] == "file"
        assert obj["load"] == 4

    def test_invalid_decomposition_rejected(self, capsys, ws, tmp_path):
        dfile = tmp_path / "bad.json"
        dfile.write_text(json.dumps({"nodes": [
            {"id": 0, "parent": None, "container": [0]},
            {"id": 1, "parent": 0, "container": [1, 2]},
        ]}))
        code, _, err = run(capsys, "decomp", ws["c5"], "load", "--decomp", dfile)
        assert code == 3
        assert "INVALID_DECOMPOSITION" in err

    def test_exact_algorithms_refuse_large_graphs(self, capsys, ws):
        code, _, err = run(capsys, "decomp", ws["gk2"], "treedepth")
        assert code == 2
        assert "TOO_LARGE" in err

    def test_decomp_flag_only_for_load(self, capsys, ws):
        code, _, _ = run(capsys, "decomp", ws["c5"], "treedepth",
                         "--decomp", ws["c5"])
        assert code == 1


class TestVisgraph:
    def test_convex_polygon_is_complete(self, capsys, ws):
        code, out, _ = run(capsys, "visgraph", ws["hex"])
        assert code == 0
        obj = json.loads(out)
        assert obj["n"] == 6
        assert len(obj["edges"]) == 15

    def test_self_intersection_rejected(self, capsys, ws):
        code, _, err = run(capsys, "visgraph", ws["bowtie"])
        assert code == 3
        assert "INVALID_POLYGON" in err

    def test_agrees_with_library(self, capsys, tmp_path):
        poly = random_simple_polygon(9, random.Random(5))
        pfile = tmp_path / "p.json"
        save_polygon(poly, str(pfile))
        code, out, _ = run(capsys, "visgraph", pfile)
        assert code == 0
        assert json.loads(out) == visibility_graph(poly).to_json()


class TestVerify:
    def test_single_check_reports_all_claims(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "solver-oracle")
        assert code == 0
        assert "PASS" in out
        assert "12 skipped" in out

    def test_json_report_lists_every_claim_once(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "solver-oracle", "--json")
        assert code == 0
        obj = json.loads(out)
        assert obj["seed"] == 0
        ids = [r["id"] for r in obj["results"]]
        assert len(ids) == 13 and len(set(ids)) == 13
        by_id = {r["id"]: r for r in obj["results"]}
        assert by_id["solver-oracle"]["status"] == "PASS"
        assert by_id["number-hierarchy"]["status"] == "SKIPPED"

    def test_unknown_selector(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "nonsense")
        assert code == 1
        assert "selector" in err


class TestEntry:
    def test_no_arguments_is_usage(self, capsys):
        assert run(capsys, )[0] == 1

    def test_help_exits_clean(self, capsys):
        assert run(capsys, "--help")[0] == 0
        assert run(capsys, "play", "--help")[0] == 0
