import pytest

from resspace.errors import (
    CycleError,
    IndegreeExceededError,
    InvalidParamError,
    MultipleSinksError,
)
from resspace.graphs import (
    Dag,
    bit_reversal_graph,
    binary_tree_graph,
    make_graph,
    path_graph,
    pyramid_graph,
    topological_order,
    validate_dag,
)


def test_pyramid_smallest():
    g = pyramid_graph(1)
    assert g.n == 3
    assert g.sources == (1, 2)
    assert g.sink == 3
    assert len(g.edges) == 2
    assert all(g.indegree(v) <= 2 for v in range(1, g.n + 1))


def test_pyramid_vertex_count():
    for h in range(1, 6):
        g = pyramid_graph(h)
        assert g.n == (h + 1) * (h + 2) // 2
        validate_dag(g)


def test_path():
    g = path_graph(4)
    assert g.n == 4
    assert len(g.edges) == 3
    assert g.sink == 4
    assert max(g.indegree(v) for v in range(1, 5)) == 1


def test_path_counts():
    for n in range(1, 8):
        assert path_graph(n).n == n


def test_binary_tree():
    g = binary_tree_graph(2)
    assert g.n == 7
    assert g.sources == (1, 2, 3, 4)
    assert g.sink == 7
    validate_dag(g)


def test_bit_reversal_shape():
    g = bit_reversal_graph(2)
    assert g.n == 8
    assert g.sink == 8
    assert all(g.indegree(v) <= 2 for v in range(1, 9))
    validate_dag(g)
    # cross edges realize the 2-bit reversal permutation
    cross = sorted((u, v) for u, v in g.edges if v > 4 and u <= 4)
    assert cross == [(1, 5), (2, 7), (3, 6), (4, 8)]


def test_make_graph_families_validate():
    for family, param in [
        ("path", 5),
        ("pyramid", 3),
        ("binary_tree", 3),
        ("bit_reversal", 3),
    ]:
        g = make_graph(family, param)
        order = validate_dag(g)
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[u] < pos[v] for u, v in g.edges)


def test_make_graph_bad_family():
    with pytest.raises(InvalidParamError):
        make_graph("torus", 3)
    with pytest.raises(InvalidParamError):
        make_graph("path", 0)


def test_validate_rejects_two_sinks():
    g = Dag(n=3, edges=((1, 2), (1, 3)))
    with pytest.raises(MultipleSinksError):
        validate_dag(g)


def test_validate_rejects_cycle():
    with pytest.raises(CycleError):
        validate_dag(Dag(n=2, edges=((1, 2), (2, 1))))
    with pytest.raises(CycleError):
        validate_dag(Dag(n=1, edges=((1, 1),)))


def test_validate_rejects_indegree():
    g = Dag(n=4, edges=((1, 4), (2, 4), (3, 4)), max_indegree=2)
    with pytest.raises(IndegreeExceededError):
        validate_dag(g)


def test_topological_order_deterministic():
    assert topological_order(path_graph(3)) == (1, 2, 3)
    assert topological_order(pyramid_graph(1)) == (1, 2, 3)
    g = bit_reversal_graph(1)
    order = topological_order(g)
    assert order[-1] == g.sink
