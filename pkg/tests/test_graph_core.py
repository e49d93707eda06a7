import itertools

import pytest
from hypothesis import given, settings, strategies as st

from helpers import all_simple_path_lengths
from treasure_hunt.graph_core import (
    CaterpillarSpec,
    GraphError,
    PortLabeledGraph,
    bfs_distances,
    caterpillar_specs,
    double_for_rendezvous,
    dump_graph,
    dump_instance,
    load_graph,
    make_caterpillar,
    parse_instance,
    random_connected_graph,
    random_tree,
    shortest_path,
    validate,
)


def path_graph(n):
    edges = [(i, 1 if i else 0, i + 1, 0) for i in range(n - 1)]
    return PortLabeledGraph.from_edges(list(range(n)), edges)


def kinds(graph):
    return {v.kind for v in validate(graph)}


def test_single_edge_is_valid():
    g = PortLabeledGraph.from_edges([7, 3], [(0, 0, 1, 0)])
    assert validate(g) == []


def test_reciprocity_violation():
    adjacency = (((1, 0),), ((2, 0),), ((1, 0),))
    g = PortLabeledGraph((0, 1, 2), adjacency)
    assert "reciprocity" in kinds(g)


def test_disconnected():
    g = PortLabeledGraph.from_edges([0, 1, 2, 3], [(0, 0, 1, 0), (2, 0, 3, 0)])
    assert kinds(g) == {"connectivity"}


def test_other_violations():
    assert "label" in kinds(PortLabeledGraph.from_edges([4, 4], [(0, 0, 1, 0)]))
    assert "port" in kinds(PortLabeledGraph.from_edges([0, 1], [(0, 1, 1, 0)]))
    assert "self-loop" in kinds(PortLabeledGraph(((0),), (((0, 1), (0, 0)),)))
    parallel = PortLabeledGraph.from_edges([0, 1], [(0, 0, 1, 0), (0, 1, 1, 1)])
    assert "parallel" in kinds(parallel)


def test_shortest_path_trivial():
    g = path_graph(3)
    p = shortest_path(g, 1, 1)
    assert p.length == 0 and p.steps == () and p.terminal == 1
    p = shortest_path(g, 0, 2)
    assert p.length == 2
    assert p.steps == ((0, 0), (1, 1))
    assert p.nodes == (0, 1, 2)


def test_shortest_path_ascending_port_tiebreak():
    # 4-cycle 0-1-2-3-0: both routes to 2 have length 2; port 0 at node 0 leads to 1
    g = PortLabeledGraph.from_edges(range(4), [(0, 0, 1, 0), (1, 1, 2, 0), (2, 1, 3, 0), (3, 1, 0, 1)])
    assert shortest_path(g, 0, 2).steps == ((0, 0), (1, 1))


@pytest.mark.parametrize("seed", range(40))
def test_shortest_path_against_enumeration(seed):
    import random
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    e = rng.randint(n - 1, n * (n - 1) // 2)
    g = random_connected_graph(n, e, seed)
    for s, t in itertools.product(range(n), repeat=2):
        p = shortest_path(g, s, t)
        assert p.length == min(all_simple_path_lengths(g, s, t))
        v = s
        for node, port in p.steps:
            assert node == v
            v = g.neighbor(node, port)[0]
        assert v == t
        assert len(set(p.nodes)) == len(p.nodes)


def test_caterpillar_d2_k3():
    g, s, t = make_caterpillar(CaterpillarSpec(2, 3, (1, 2)))
    assert validate(g) == []
    assert g.n == 7 and g.num_edges == 6
    assert (g.labels[0], g.degree(0)) == (0, 3)
    assert (g.labels[1], g.degree(1)) == (5, 4)
    assert g.labels[2] == 10 and g.degree(2) == 1
    assert (s, t) == (0, 2)
    # equal ports on the first spine edge
    assert g.neighbor(0, 1) == (1, 1)
    # leaf labels follow the port that reaches them
    for port in range(g.degree(1)):
        w, _ = g.neighbor(1, port)
        if w not in (0, 2):
            assert g.labels[w] == 5 + port + 1


def test_caterpillar_smallest():
    g, s, t = make_caterpillar(CaterpillarSpec(1, 2, (1,)))
    assert g.n == 3
    assert g.degree(s) == 2 and g.degree(t) == 1
    assert g.neighbor(0, 1) == (1, 0)


@pytest.mark.parametrize("ports", [(3,), (0, 0), (1, 4)])
def test_caterpillar_rejects_bad_ports(ports):
    with pytest.raises(GraphError):
        make_caterpillar(CaterpillarSpec(len(ports), 3, ports))


@pytest.mark.parametrize("D,k", [(d, k) for d in range(1, 4) for k in range(2, 5)])
def test_caterpillar_family_is_injective(D, k):
    specs = list(caterpillar_specs(D, k))
    assert len(specs) == k ** D
    dumps = set()
    for spec in specs:
        g, _, _ = make_caterpillar(spec)
        assert validate(g) == []
        assert g.n == D * k + 1
        dumps.add(dump_graph(g))
    assert len(dumps) == k ** D


def test_doubling_k2():
    g = PortLabeledGraph.from_edges([0, 1], [(0, 0, 1, 0)])
    d, a, b = double_for_rendezvous(g, 0, 1)
    assert d.n == 4 and d.num_edges == 3
    assert bfs_distances(d, a)[b] == 3
    assert validate(d) == []


def test_doubling_labels():
    g = PortLabeledGraph.from_edges([5, 2], [(0, 0, 1, 0)])
    d, _, _ = double_for_rendezvous(g, 0, 1)
    assert d.labels == (10, 4, 11, 5)


@pytest.mark.parametrize("seed", range(30))
def test_doubling_properties(seed):
    import random
    rng = random.Random(seed)
    n = rng.randint(2, 20)
    g = random_tree(n, seed)
    v, w = rng.sample(range(n), 2)
    d, a, b = double_for_rendezvous(g, v, w)
    assert validate(d) == []
    assert d.num_edges == 2 * g.num_edges + 1
    assert bfs_distances(d, a)[b] == 2 * bfs_distances(g, v)[w] + 1
    for copy in (0, 1):
        off = copy * n
        for u, pu, x, px in g.edges():
            assert d.neighbor(u + off, pu) == (x + off, px)
        assert all(d.labels[i + off] == 2 * g.labels[i] + copy for i in range(n))
    assert d.neighbor(w, g.degree(w)) == (w + n, g.degree(w))


def test_random_k2():
    for seed in range(5):
        g = random_connected_graph(2, 1, seed)
        assert g.adjacency == (((1, 0),), ((0, 0),))


def test_random_tree_valid():
    g = random_connected_graph(5, 4, 1)
    assert validate(g) == [] and g.is_tree()


@given(n=st.integers(1, 30), extra=st.integers(0, 60), seed=st.integers(0, 10 ** 6))
@settings(max_examples=150, deadline=None)
def test_random_graph_properties(n, extra, seed):
    e = min(n - 1 + extra, n * (n - 1) // 2)
    g = random_connected_graph(n, e, seed)
    assert validate(g) == []
    assert g.num_edges == e
    assert dump_graph(random_connected_graph(n, e, seed)) == dump_graph(g)


def test_random_graph_infeasible():
    with pytest.raises(GraphError):
        random_connected_graph(4, 2, 0)
    with pytest.raises(GraphError):
        random_connected_graph(4, 7, 0)


def test_text_roundtrip():
    g = random_connected_graph(12, 20, 9)
    assert load_graph(dump_graph(g)) == g
    inst = parse_instance(dump_instance(g, 3, 7))
    assert (inst.graph, inst.start, inst.treasure) == (g, 3, 7)
    only = parse_instance("# positions\nstart 1\ntreasure 2\n")
    assert only.graph is None and (only.start, only.treasure) == (1, 2)


@pytest.mark.parametrize("text,line", [
    ("graph-v1\nnodes 2\nnode 0 0\nnode 1 1\nedge 0 0 1 0\nedge 0 0 1 1\n", 6),
    ("graph-v1\nnodes 2\nnode 0 0\nnode 1 1\nedge 0 x 1 0\n", 5),
    ("graph-v1\nnodes 3\nnode 0 0\nnode 1 1\nnode 2 2\nedge 0 0 1 0\n", 6),
    ("nodes 2\n", 1),
    ("graph-v1\nnodes 2\nnode 0 0\nnode 1 1\nbogus\n", 5),
])
def test_loader_rejects_with_line(text, line):
    with pytest.raises(GraphError) as exc:
        load_graph(text)
    assert exc.value.line == line
