import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import connected_graphs
from oracle import all_connected_graphs, brute_blocks, brute_bridges, brute_cutvertices
from swapnet.constructions import make_named
from swapnet.graph import (
    Graph,
    GraphError,
    block_cut_tree,
    bridge_tree,
    build_graph,
    classify,
    components_after_destruction,
    find_bridges,
    is_connected,
)

P3 = Graph(3, [(1, 2), (2, 3)])
TRI34 = Graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
K4 = make_named("complete", 4)


def test_build_graph_normalizes():
    assert build_graph(3, [(1, 2), (2, 3)]) == P3
    g = build_graph(3, [(2, 1), (1, 2), (2, 3)])
    assert g == P3
    assert g.sorted_edges() == [(1, 2), (2, 3)]


@pytest.mark.parametrize("n,edges", [(4, [(1, 1)]), (3, [(1, 4)]), (3, [(0, 1)]), (0, [])])
def test_build_graph_rejects(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_is_connected():
    assert is_connected(P3)
    assert not is_connected(Graph(3, [(1, 2)]))
    k4_minus_4 = Graph(4, [(1, 2), (1, 3), (2, 3)])
    assert not is_connected(k4_minus_4)


def test_components_after_destruction():
    part = components_after_destruction(P3, 2)
    assert set(part.parts) == {frozenset({1}), frozenset({3})} and part.excluded == 2
    part = components_after_destruction(P3, (1, 2))
    assert set(part.parts) == {frozenset({1}), frozenset({2, 3})} and part.excluded is None
    part = components_after_destruction(TRI34, 3)
    assert set(part.parts) == {frozenset({1, 2}), frozenset({4})}
    with pytest.raises(GraphError):
        components_after_destruction(P3, (1, 3))


def test_find_bridges_examples():
    assert find_bridges(make_named("cycle", 3)) == set()
    assert find_bridges(P3) == {(1, 2), (2, 3)}
    assert find_bridges(TRI34) == {(3, 4)}


def test_bridge_tree_examples():
    bt = bridge_tree(TRI34)
    assert set(bt.islands) == {frozenset({1, 2, 3}), frozenset({4})}
    assert list(bt.bridge_map.values()) == [(3, 4)]
    bt = bridge_tree(make_named("path", 4))
    assert sorted(map(sorted, bt.islands)) == [[1], [2], [3], [4]]
    assert bt.diameter() == 3
    two_triangles = Graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)])
    bt = bridge_tree(two_triangles)
    assert set(bt.islands) == {frozenset({1, 2, 3}), frozenset({4, 5, 6})}
    assert len(bt.tree_edges) == 1
    with pytest.raises(GraphError):
        bridge_tree(Graph(3, [(1, 2)]))


def test_block_cut_tree_examples():
    bct = block_cut_tree(TRI34)
    assert set(bct.blocks) == {frozenset({1, 2, 3}), frozenset({3, 4})}
    assert bct.cutvertices == {3}
    bct = block_cut_tree(P3)
    assert set(bct.blocks) == {frozenset({1, 2}), frozenset({2, 3})} and bct.cutvertices == {2}
    bct = block_cut_tree(K4)
    assert bct.blocks == (frozenset({1, 2, 3, 4}),) and not bct.cutvertices


def test_classify_examples():
    r = classify(make_named("star", 5))
    assert r.is_tree and r.is_star and r.bridge_tree_diameter == 2
    r = classify(K4)
    assert r.is_bridgeless and r.is_two_connected and r.bridge_tree_diameter == 0
    assert classify(TRI34).bridge_tree_is_star_with_singleton_outer_islands
    # two triangles joined by a bridge: neither island is a single vertex
    two_triangles = Graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)])
    assert not classify(two_triangles).bridge_tree_is_star_with_singleton_outer_islands


def _check_structures(n, edges):
    g = Graph(n, edges)
    bridges = find_bridges(g)
    assert bridges == brute_bridges(n, edges)
    for e in g.edges:
        parts = components_after_destruction(g, e).parts
        assert (e in bridges) == (len(parts) == 2)
    bt = bridge_tree(g)
    assert len(bt.tree_edges) == len(bridges) == len(bt.islands) - 1
    assert sorted(bt.bridge_map.values()) == sorted(bridges)
    assert sorted(v for isl in bt.islands for v in isl) == list(range(1, n + 1))
    for (i, j), (u, v) in bt.bridge_map.items():
        sides = components_after_destruction(g, (u, v)).parts
        side_u = next(s for s in sides if u in s)
        # the island tree minus the tree edge splits the islands the same way
        assert bt.islands[i] <= side_u or bt.islands[j] <= side_u
    if n >= 2:
        bct = block_cut_tree(g)
        assert set(bct.blocks) == brute_blocks(n, edges)
        assert bct.cutvertices == brute_cutvertices(n, edges)
        for u, v in g.edges:
            assert sum(1 for b in bct.blocks if u in b and v in b) == 1
        # incidence structure is a tree
        assert len(bct.tree_edges) == len(bct.blocks) + len(bct.cutvertices) - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_oracle_equivalence_small(n):
    for edges in all_connected_graphs(n):
        _check_structures(n, edges)


@settings(max_examples=150, deadline=None)
@given(connected_graphs(), st.randoms(use_true_random=False))
def test_relabel_invariance(g, rnd):
    perm = [0] + rnd.sample(range(1, g.n + 1), g.n)
    h = g.relabel(perm)
    assert find_bridges(h) == {tuple(sorted((perm[u], perm[v]))) for u, v in find_bridges(g)}
    assert {frozenset(perm[v] for v in b) for b in block_cut_tree(g).blocks} == set(block_cut_tree(h).blocks)
    assert {perm[v] for v in block_cut_tree(g).cutvertices} == block_cut_tree(h).cutvertices
    assert classify(g) == classify(h)


def test_graph_is_hashable_value():
    g = Graph(3, [(1, 2)])
    assert g == Graph(3, [(2, 1)]) and hash(g) == hash(Graph(3, [(2, 1)]))
    assert g.with_edge(2, 3) == P3
    assert P3.without_edge(2, 3) == g
    assert P3 != Graph(4, [(1, 2), (2, 3)])
