import pytest

from pursuit.engine import (
    FunctionPolicy,
    GameState,
    Trace,
    Turn,
    Variant,
    legal_evader_moves,
    legal_joint_moves,
    legal_pursuer_moves,
    make_state,
    play_match,
    replay_trace,
    step,
)
from pursuit.errors import GameError, IllegalMoveError
from pursuit.graphs import all_pairs_distances, build_graph

from test_graphs import clique_edges, cycle_edges, path_edges


def path(n):
    return build_graph(n, path_edges(n))


def cycle(n):
    return build_graph(n, cycle_edges(n))


def clique(n):
    return build_graph(n, clique_edges(n))


class TestLegalMoves:
    def test_zombie_on_path(self):
        g = path(5)
        d = all_pairs_distances(g)
        s = make_state([0], 4, Turn.PURSUERS)
        assert legal_pursuer_moves(g, d, s, 0, Variant.ZOMBIES) == {1}

    def test_zombie_two_shortest_paths(self):
        g = cycle(6)
        d = all_pairs_distances(g)
        s = make_state([0], 3, Turn.PURSUERS)
        assert legal_pursuer_moves(g, d, s, 0, Variant.ZOMBIES) == {1, 5}
        assert legal_pursuer_moves(g, d, s, 0, Variant.LAZY_ZOMBIES) == {0, 1, 5}
        assert legal_pursuer_moves(g, d, s, 0, Variant.COPS) == {0, 1, 5}

    def test_hierarchy_of_move_sets(self):
        g = cycle(7)
        d = all_pairs_distances(g)
        for u in range(7):
            for e in range(7):
                if u == e:
                    continue
                s = make_state([u], e, Turn.PURSUERS)
                z = legal_pursuer_moves(g, d, s, 0, Variant.ZOMBIES)
                lz = legal_pursuer_moves(g, d, s, 0, Variant.LAZY_ZOMBIES)
                c = legal_pursuer_moves(g, d, s, 0, Variant.COPS)
                assert z and z <= lz <= c

    def test_evader_moves(self):
        g = clique(4)
        s = make_state([1], 0, Turn.EVADER)
        assert legal_evader_moves(g, s) == {0, 1, 2, 3}
        g2 = cycle(5)
        s2 = make_state([0], 2, Turn.EVADER)
        assert legal_evader_moves(g2, s2) == {1, 2, 3}

    def test_evader_may_step_into_capture(self):
        g = path(2)
        s = make_state([0], 1, Turn.EVADER)
        assert legal_evader_moves(g, s) == {0, 1}
        nxt, captured = step(g, all_pairs_distances(g), s, 0, Variant.ZOMBIES)
        assert captured and nxt.captured

    def test_wrong_turn_and_terminal(self):
        g = path(3)
        d = all_pairs_distances(g)
        s = make_state([0], 2, Turn.EVADER)
        with pytest.raises(GameError):
            legal_pursuer_moves(g, d, s, 0, Variant.ZOMBIES)
        with pytest.raises(GameError):
            legal_evader_moves(g, make_state([1], 2, Turn.PURSUERS))
        with pytest.raises(GameError):
            legal_evader_moves(g, make_state([2], 2, Turn.EVADER))


class TestJointMoves:
    def test_colocated_zombies_may_diverge(self):
        g = cycle(6)
        d = all_pairs_distances(g)
        s = make_state([0, 0], 3, Turn.PURSUERS)
        moves = legal_joint_moves(g, d, s, Variant.ZOMBIES)
        assert moves == [(1, 1), (1, 5), (5, 5)]

    def test_distinct_positions_full_product(self):
        g = path(4)
        d = all_pairs_distances(g)
        s = make_state([0, 2], 3, Turn.PURSUERS)
        assert legal_joint_moves(g, d, s, Variant.ZOMBIES) == [(1, 3)]
        lazy = legal_joint_moves(g, d, s, Variant.LAZY_ZOMBIES)
        assert lazy == [(0, 2), (0, 3), (1, 2), (1, 3)]

    def test_lex_order(self):
        g = cycle(6)
        d = all_pairs_distances(g)
        s = make_state([0, 2], 4, Turn.PURSUERS)
        moves = legal_joint_moves(g, d, s, Variant.ZOMBIES)
        assert moves == sorted(moves)


class TestStep:
    def test_pursuer_captures(self):
        g = path(3)
        d = all_pairs_distances(g)
        s = make_state([1], 2, Turn.PURSUERS)
        nxt, captured = step(g, d, s, (2,), Variant.ZOMBIES)
        assert captured and nxt.pursuers == (2,) and nxt.turn is Turn.EVADER

    def test_no_capture_keeps_distance(self):
        g = cycle(5)
        d = all_pairs_distances(g)
        s = make_state([0], 2, Turn.PURSUERS)
        nxt, captured = step(g, d, s, (1,), Variant.ZOMBIES)
        assert not captured
        assert nxt == GameState((1,), 2, Turn.EVADER)

    def test_illegal_move_names_offender(self):
        g = path(4)
        d = all_pairs_distances(g)
        s = make_state([0, 1], 3, Turn.PURSUERS)
        with pytest.raises(IllegalMoveError, match="pursuer 1"):
            step(g, d, s, (1, 0), Variant.ZOMBIES)  # slot 1 moving away

    def test_zombie_cannot_stay(self):
        g = path(3)
        d = all_pairs_distances(g)
        s = make_state([0], 2, Turn.PURSUERS)
        with pytest.raises(IllegalMoveError):
            step(g, d, s, (0,), Variant.ZOMBIES)
        nxt, _ = step(g, d, s, (0,), Variant.LAZY_ZOMBIES)
        assert nxt.pursuers == (0,)

    def test_result_is_canonical(self):
        g = clique(3)
        d = all_pairs_distances(g)
        s = make_state([0, 1], 2, Turn.PURSUERS)
        nxt, captured = step(g, d, s, (2, 0), Variant.COPS)
        assert nxt.pursuers == (0, 2) and captured


def greedy_zombie(g, d, state):
    out = []
    e = state.evader
    for u in state.pursuers:
        out.append(min(w for w in g.adj[u] if d[w][e] == d[u][e] - 1))
    return tuple(out)


def stubborn_evader_factory(stay_at):
    return FunctionPolicy(lambda g, P: stay_at, lambda g, d, s: s.evader)


class TestPlayMatch:
    def test_zombie_runs_down_path(self):
        g = path(6)
        pursuer = FunctionPolicy(lambda g, k: [0] * k, greedy_zombie)
        evader = FunctionPolicy(lambda g, P: g.n - 1, lambda g, d, s: s.evader)
        t = play_match(g, Variant.ZOMBIES, 1, pursuer, evader, round_limit=10)
        assert t.outcome == "CAPTURE"
        assert t.capture_round == 5

    def test_round_limit_on_cycle(self):
        g = cycle(5)

        def run(gr, d, s):
            # keep distance 2 from the single zombie
            z = s.pursuers[0]
            choices = [w for w in list(gr.adj[s.evader]) + [s.evader] if d[z][w] == 2]
            return choices[0]

        pursuer = FunctionPolicy(lambda g, k: [0], greedy_zombie)
        evader = FunctionPolicy(lambda g, P: 2, run)
        t = play_match(g, Variant.ZOMBIES, 1, pursuer, evader, round_limit=30)
        assert t.outcome == "ROUND_LIMIT"
        assert t.rounds_played == 30

    def test_capture_at_placement(self):
        g = path(3)
        pursuer = FunctionPolicy(lambda g, k: [1], None)
        evader = FunctionPolicy(lambda g, P: 1, None)
        t = play_match(g, Variant.ZOMBIES, 1, pursuer, evader, round_limit=5)
        assert t.captured and t.capture_round == 0 and t.rows == []

    def test_external_placement_overrides_policy(self):
        g = path(4)
        pursuer = FunctionPolicy(lambda g, k: [0], greedy_zombie)
        evader = stubborn_evader_factory(3)
        t = play_match(g, Variant.ZOMBIES, 1, pursuer, evader, round_limit=9,
                       pursuer_placement=[2])
        assert t.pursuer_start == (2,)
        assert t.capture_round == 1

    def test_policy_illegal_move_raises(self):
        g = path(4)
        bad = FunctionPolicy(lambda g, k: [0], lambda g, d, s: (3,))
        evader = stubborn_evader_factory(3)
        with pytest.raises(IllegalMoveError):
            play_match(g, Variant.ZOMBIES, 1, bad, evader, round_limit=5)


class TestTrace:
    def make_trace(self):
        g = path(6)
        pursuer = FunctionPolicy(lambda g, k: [0] * k, greedy_zombie)
        evader = FunctionPolicy(lambda g, P: g.n - 1,
                                lambda g, d, s: max(g.adj[s.evader][-1], s.evader))
        return g, play_match(g, Variant.ZOMBIES, 2, pursuer, evader, round_limit=20)

    def test_jsonl_round_trip(self):
        g, t = self.make_trace()
        again = Trace.from_jsonl(t.to_jsonl())
        assert again.variant is t.variant
        assert again.pursuer_start == t.pursuer_start
        assert again.evader_start == t.evader_start
        assert again.rows == t.rows

    def test_replay_accepts_own_trace(self):
        g, t = self.make_trace()
        replay_trace(g, t)

    def test_replay_rejects_tampering(self):
        g, t = self.make_trace()
        rows = t.rows[:]
        bad = rows[0].__class__(rows[0].round, rows[0].mover, (5, 5),
                                rows[0].evader, rows[0].captured)
        t.rows[0] = bad
        with pytest.raises(GameError):
            replay_trace(g, t)

    def test_header_fields(self):
        g, t = self.make_trace()
        import json
        head = json.loads(t.to_jsonl().splitlines()[0])
        assert set(head) == {"variant", "k", "n", "placements"}
        assert head["k"] == 2 and head["n"] == 6

    def test_variant_parse_error(self):
        with pytest.raises(GameError):
            Variant.parse("werewolves")
