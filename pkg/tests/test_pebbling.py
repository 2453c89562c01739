import pytest

from resspace.errors import (
    IllegalMoveError,
    IncompletePebblingError,
    InfeasibleError,
    StateSpaceExceededError,
)
from resspace.graphs import bit_reversal_graph, make_graph, path_graph, pyramid_graph
from resspace.pebbling import (
    EMPTY_CONFIG,
    Move,
    PebbleConfig,
    apply_move,
    replay,
    search_min_space,
    search_min_time_given_space,
    trivial_black_pebbling,
    validate_pebbling,
)


def test_apply_move_source_placement():
    g = pyramid_graph(1)
    c = apply_move(g, EMPTY_CONFIG, Move("pb", 1))
    assert c == PebbleConfig({1}, ())


def test_apply_move_sink_needs_predecessors():
    g = pyramid_graph(1)
    both = PebbleConfig({1, 2}, ())
    assert apply_move(g, both, Move("pb", 3)).black == {1, 2, 3}
    with pytest.raises(IllegalMoveError) as e:
        apply_move(g, PebbleConfig({1}, ()), Move("pb", 3))
    assert e.value.rule == 1


def test_apply_move_white_rules():
    g = pyramid_graph(1)
    c = apply_move(g, EMPTY_CONFIG, Move("pw", 3))
    assert c.white == {3}
    with pytest.raises(IllegalMoveError) as e:
        apply_move(g, c, Move("rw", 3))
    assert e.value.rule == 4
    ok = replay(g, [Move("pw", 3), Move("pb", 1), Move("pb", 2), Move("rw", 3)])
    assert ok[-1] == PebbleConfig({1, 2}, ())


def test_apply_move_one_pebble_per_vertex():
    g = path_graph(2)
    c = apply_move(g, EMPTY_CONFIG, Move("pb", 1))
    with pytest.raises(IllegalMoveError):
        apply_move(g, c, Move("pw", 1))
    with pytest.raises(IllegalMoveError) as e:
        apply_move(g, c, Move("rb", 2))
    assert e.value.rule == 2


def test_validate_pebbling_replay():
    g = pyramid_graph(1)
    moves = [Move("pb", 1), Move("pb", 2), Move("pb", 3), Move("rb", 1), Move("rb", 2)]
    m = validate_pebbling(g, moves)
    assert m.time == 5
    assert m.space == 3


def test_validate_pebbling_incomplete():
    g = path_graph(2)
    with pytest.raises(IncompletePebblingError):
        validate_pebbling(g, [])
    with pytest.raises(IncompletePebblingError):
        validate_pebbling(g, [Move("pb", 1)])


def test_validate_pebbling_illegal_index():
    g = path_graph(3)
    with pytest.raises(IllegalMoveError) as e:
        validate_pebbling(g, [Move("pb", 1), Move("pb", 3)])
    assert e.value.index == 1


def test_trivial_pebbling_path():
    for n in (1, 2, 3, 5):
        g = path_graph(n)
        moves = trivial_black_pebbling(g)
        m = validate_pebbling(g, moves)
        assert m.time == 2 * n - 1
        assert m.space == (1 if n == 1 else 2)


def test_trivial_pebbling_pyramid():
    g = pyramid_graph(1)
    m = validate_pebbling(g, trivial_black_pebbling(g))
    assert m.time == 5
    assert m.space == 3


def test_trivial_pebbling_time_bound():
    for family, param in [("pyramid", 2), ("bit_reversal", 2), ("binary_tree", 2)]:
        g = make_graph(family, param)
        m = validate_pebbling(g, trivial_black_pebbling(g))
        assert m.time == 2 * g.n - 1


def test_search_min_space_path():
    for n in (2, 3, 4):
        price, witness = search_min_space(path_graph(n), "black")
        assert price == 2
        assert validate_pebbling(path_graph(n), witness).space <= 2


def test_search_min_space_single_vertex():
    price, witness = search_min_space(path_graph(1), "black")
    assert price == 1
    assert witness == (Move("pb", 1),)


def test_search_min_space_bit_reversal():
    for p in (1, 2):
        g = bit_reversal_graph(p)
        price, witness = search_min_space(g, "black")
        assert price == 3
        assert validate_pebbling(g, witness).space <= 3


def test_bw_price_at_most_black():
    for g in (pyramid_graph(1), pyramid_graph(2), path_graph(3), bit_reversal_graph(1)):
        black, _ = search_min_space(g, "black")
        bw, w = search_min_space(g, "black_white")
        assert bw <= black
        assert validate_pebbling(g, w).space <= bw


def test_min_time_path3():
    t, witness = search_min_time_given_space(path_graph(3), 2, "black")
    assert t == 5
    assert validate_pebbling(path_graph(3), witness).time == 5


def test_min_time_infeasible_below_price():
    with pytest.raises(InfeasibleError):
        search_min_time_given_space(pyramid_graph(1), 2, "black")


def test_min_time_monotone_in_space():
    g = bit_reversal_graph(1)
    times = []
    for s in range(3, g.n + 1):
        t, w = search_min_time_given_space(g, s, "black")
        assert validate_pebbling(g, w) == validate_pebbling(g, w)
        times.append(t)
    assert times == sorted(times, reverse=True)


def test_min_time_witness_metrics():
    g = pyramid_graph(2)  # Peb = 4
    for s in range(4, 6):
        t, w = search_min_time_given_space(g, s, "black")
        m = validate_pebbling(g, w)
        assert m.time == t
        assert m.space <= s


def test_search_caps():
    big = path_graph(30)
    with pytest.raises(StateSpaceExceededError):
        search_min_space(big, "black")
    with pytest.raises(StateSpaceExceededError):
        search_min_space(path_graph(16), "black_white")


def test_min_time_path4_constant_beyond_two():
    g = path_graph(4)
    for s in (2, 3, 4):
        t, _ = search_min_time_given_space(g, s, "black")
        assert t == 7


def test_bit_reversal_three_rows_price():
    # the 16-vertex member still has black pebbling price 3
    g = bit_reversal_graph(3)
    price, witness = search_min_space(g, "black")
    assert price == 3
    assert validate_pebbling(g, witness).space <= 3


def test_min_time_at_least_longest_path():
    for g in (path_graph(4), pyramid_graph(2), bit_reversal_graph(2)):
        # longest source-to-sink path by dynamic programming over topo order
        from resspace.graphs import topological_order

        depth = {}
        for v in topological_order(g):
            preds = g.predecessors(v)
            depth[v] = 1 + max((depth[u] for u in preds), default=0)
        t, _ = search_min_time_given_space(g, g.n, "black")
        assert t >= depth[g.sink]
