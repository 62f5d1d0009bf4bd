"""The multigraph data model and its structural queries."""

import json
from itertools import combinations, combinations_with_replacement

import pytest

from autgraph import (
    GraphError,
    Multigraph,
    block_decomposition,
    connected_components,
    cycle_graph,
    cyclomatic_number,
    is_biconnected,
    is_connected,
    is_two_edge_connected,
    multi_edge_graph,
    path_graph,
)

TRIANGLE = cycle_graph(3)
DOUBLE_EDGE = multi_edge_graph(2)
P2 = path_graph(2)
P3 = path_graph(3)
TWO_TRIANGLES = Multigraph(5, ((1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)))
TWO_PAIRS = Multigraph(3, ((1, 2), (1, 2), (2, 3), (2, 3)))


def small_connected_corpus(max_n=5, max_m=5):
    """All connected multigraphs with n <= max_n and m <= max_m (no legs)."""
    graphs = []
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(1, n + 1), 2))
        for m in range(0, max_m + 1):
            if m == 0 and n > 1:
                continue
            for chosen in combinations_with_replacement(pairs, m):
                g = Multigraph(n, chosen)
                if is_connected(g):
                    graphs.append(g)
    return graphs


def removal_disconnects(g, v):
    """Oracle: does deleting vertex v (with its edges) disconnect the rest?"""
    rest = [w for w in range(1, g.n + 1) if w != v]
    if len(rest) <= 1:
        return False
    rank = {w: i + 1 for i, w in enumerate(rest)}
    edges = [(rank[a], rank[b]) for a, b in g.edges if v not in (a, b)]
    return not is_connected(Multigraph(len(rest), edges))


def bridge_oracle(g):
    """Oracle: ids of edges whose removal disconnects the graph."""
    bridges = []
    for eid in range(g.num_edges):
        edges = [pair for j, pair in enumerate(g.edges) if j != eid]
        if not is_connected(Multigraph(g.n, edges)):
            bridges.append(eid)
    return bridges


# ----------------------------------------------------------------------
# construction and validation

def test_constructor_normalizes_edges_and_legs():
    g = Multigraph(3, ((3, 1), (2, 1)), (("x2", 3), ("x1", 1)))
    assert g.edges == ((1, 2), (1, 3))
    assert g.legs == (("x1", 1), ("x2", 3))


def test_constructor_rejects_loops():
    with pytest.raises(GraphError):
        Multigraph(2, ((1, 1),))


def test_constructor_rejects_out_of_range_vertices():
    with pytest.raises(GraphError):
        Multigraph(2, ((1, 3),))
    with pytest.raises(GraphError):
        Multigraph(2, (), (("x1", 5),))


def test_constructor_rejects_bad_label_sets():
    with pytest.raises(GraphError):
        Multigraph(2, (), (("x1", 1), ("x1", 2)))  # repeated label
    with pytest.raises(GraphError):
        Multigraph(2, (), (("x2", 1),))  # gap: x1 missing
    with pytest.raises(GraphError):
        Multigraph(2, (), (("y1", 1),))


def test_equality_ignores_input_order():
    a = Multigraph(3, ((1, 2), (2, 3), (1, 2)))
    b = Multigraph(3, ((2, 1), (1, 2), (3, 2)))
    assert a == b and hash(a) == hash(b)


def test_incidence_and_degrees():
    g = TWO_PAIRS
    assert g.degree(2) == 4
    assert g.degree(1) == 2
    assert g.multiplicity(1, 2) == 2
    assert g.multiplicity(1, 3) == 0
    assert g.neighbors(2) == (1, 3)
    assert g.other_end(0, 1) == 2


def test_legs_at():
    g = Multigraph(2, ((1, 2),), (("x1", 1), ("x2", 1), ("x3", 2)))
    assert g.legs_at(1) == ("x1", "x2")
    assert g.legs_at(2) == ("x3",)


def test_relabeled_is_permutation_only():
    with pytest.raises(GraphError):
        TRIANGLE.relabeled([1, 1, 2])
    g = P3.relabeled([3, 1, 2])
    assert g.edges == ((1, 2), (1, 3))


# ----------------------------------------------------------------------
# cyclomatic number

def test_cyclomatic_examples():
    assert cyclomatic_number(P2) == 0
    assert cyclomatic_number(TRIANGLE) == 1  # m - n + c = 3 - 3 + 1
    assert cyclomatic_number(DOUBLE_EDGE) == 1


def test_cyclomatic_counts_components():
    two_edges_apart = Multigraph(4, ((1, 2), (3, 4)))
    assert cyclomatic_number(two_edges_apart) == 2 - 4 + 2


def test_cyclomatic_equals_m_minus_n_plus_1_when_connected():
    for g in small_connected_corpus(4, 4):
        assert cyclomatic_number(g) == g.num_edges - g.n + 1


# ----------------------------------------------------------------------
# connectivity

def test_is_connected_examples():
    assert is_connected(TRIANGLE)
    assert not is_connected(Multigraph(4, ((1, 2), (3, 4))))
    assert is_connected(Multigraph(1))


def test_connected_components_partition_vertices():
    g = Multigraph(5, ((1, 2), (4, 5)))
    components = connected_components(g)
    assert sorted(map(sorted, components)) == [[1, 2], [3], [4, 5]]


# ----------------------------------------------------------------------
# blocks and cut vertices

def test_block_decomposition_two_triangles():
    decomposition = block_decomposition(TWO_TRIANGLES)
    assert len(decomposition.blocks) == 2
    assert decomposition.cut_vertices == frozenset({3})
    assert sorted(sorted(b.vertices) for b in decomposition.blocks) == [[1, 2, 3], [3, 4, 5]]


def test_block_decomposition_triangle():
    decomposition = block_decomposition(TRIANGLE)
    assert len(decomposition.blocks) == 1
    assert decomposition.cut_vertices == frozenset()


def test_block_decomposition_path():
    decomposition = block_decomposition(P3)
    assert len(decomposition.blocks) == 2
    assert all(len(b.edge_ids) == 1 for b in decomposition.blocks)
    assert decomposition.cut_vertices == frozenset({2})


def test_block_decomposition_rejects_disconnected():
    with pytest.raises(GraphError):
        block_decomposition(Multigraph(4, ((1, 2), (3, 4))))


def test_parallel_pair_is_one_block():
    decomposition = block_decomposition(TWO_PAIRS)
    assert len(decomposition.blocks) == 2
    assert all(len(b.edge_ids) == 2 for b in decomposition.blocks)
    assert decomposition.cut_vertices == frozenset({2})


def test_blocks_partition_edges_and_cover_vertices():
    for g in small_connected_corpus(5, 5):
        if g.n == 1:
            continue
        decomposition = block_decomposition(g)
        edge_ids = [eid for b in decomposition.blocks for eid in b.edge_ids]
        assert sorted(edge_ids) == list(range(g.num_edges))
        covered = set().union(*(b.vertices for b in decomposition.blocks))
        assert covered == set(range(1, g.n + 1))


def test_cut_vertices_match_removal_oracle():
    for g in small_connected_corpus(5, 5):
        if g.n == 1:
            continue
        cut = block_decomposition(g).cut_vertices
        for v in range(1, g.n + 1):
            assert (v in cut) == removal_disconnects(g, v)


def test_blocks_at_counts_cut_membership():
    for g in small_connected_corpus(5, 4):
        if g.n == 1:
            continue
        decomposition = block_decomposition(g)
        for v in range(1, g.n + 1):
            assert (len(decomposition.blocks_at[v]) >= 2) == (v in decomposition.cut_vertices)


# ----------------------------------------------------------------------
# biconnected / 2-edge-connected predicates

def test_is_biconnected_examples():
    assert is_biconnected(DOUBLE_EDGE)
    assert is_biconnected(P2)
    assert not is_biconnected(P3)
    assert not is_biconnected(TWO_TRIANGLES)


def test_is_two_edge_connected_examples():
    assert is_two_edge_connected(TWO_PAIRS)
    assert not is_two_edge_connected(P3)
    assert is_two_edge_connected(TRIANGLE)


def test_two_edge_matches_bridge_oracle():
    for g in small_connected_corpus(5, 5):
        if g.n == 1:
            continue
        assert is_two_edge_connected(g) == (not bridge_oracle(g))


def test_predicate_implication_chain():
    # the 2-vertex single-edge graph is the lone exception: it counts as
    # biconnected (vertex removal leaves a single vertex) yet its edge is
    # a bridge, so it is not 2-edge-connected
    for g in small_connected_corpus(5, 5):
        if is_biconnected(g) and not (g.n == 2 and g.num_edges == 1):
            assert is_two_edge_connected(g)
        if is_two_edge_connected(g):
            assert is_connected(g)


def test_single_vertex_conventions():
    g = Multigraph(1)
    assert is_connected(g)
    assert not is_biconnected(g)
    assert not is_two_edge_connected(g)
    assert block_decomposition(g).blocks == ()


# ----------------------------------------------------------------------
# JSON interface

def test_json_round_trip():
    g = Multigraph(3, ((1, 2), (1, 2), (2, 3)), (("x1", 1),))
    data = g.to_json_dict()
    assert data == {
        "n": 3,
        "edges": [[1, 2], [1, 2], [2, 3]],
        "external": [{"label": "x1", "vertex": 1}],
    }
    assert Multigraph.from_json_dict(json.loads(json.dumps(data))) == g


def test_json_rejects_loops_and_duplicate_labels():
    with pytest.raises(GraphError):
        Multigraph.from_json_dict({"n": 2, "edges": [[1, 1]], "external": []})
    with pytest.raises(GraphError):
        Multigraph.from_json_dict(
            {
                "n": 2,
                "edges": [[1, 2]],
                "external": [
                    {"label": "x1", "vertex": 1},
                    {"label": "x1", "vertex": 2},
                ],
            }
        )


def test_json_rejects_malformed_records():
    with pytest.raises(GraphError):
        Multigraph.from_json_dict({"edges": [[1, 2]]})
    with pytest.raises(GraphError):
        Multigraph.from_json_dict({"n": 2, "edges": [[1]], "external": []})


# ----------------------------------------------------------------------
# factories

def test_factories():
    assert path_graph(4).edges == ((1, 2), (2, 3), (3, 4))
    assert cycle_graph(2) == DOUBLE_EDGE
    assert cycle_graph(4).num_edges == 4
    assert multi_edge_graph(3).edges == ((1, 2), (1, 2), (1, 2))
    with pytest.raises(GraphError):
        cycle_graph(1)
    with pytest.raises(GraphError):
        multi_edge_graph(0)
