"""Graph container, components, contraction, and cut arithmetic."""
import pytest

from helpers import corpus_rng, random_connected_graph
from repcut.errors import StructuralError
from repcut.graph import (
    Graph,
    boundary,
    components,
    contract,
    cut_weight,
    dichromatic_edges,
    expand_cut,
)


def square() -> Graph:
    return Graph.build(
        ("a", "b", "c", "d"),
        [("a", "b", 1.0), ("b", "c", 2.0), ("c", "d", 3.0), ("d", "a", 4.0)],
    )


def test_build_and_counts():
    g = square()
    assert g.node_count == 4
    assert g.edge_count == 4
    assert g.total_weight() == 10.0
    assert g.index["c"] == 2


def test_validation_rejects_bad_graphs():
    with pytest.raises(StructuralError):
        Graph.build(("a", "a"), [])
    with pytest.raises(StructuralError):
        Graph.build(("a", "b"), [("a", "x", 1.0)])
    with pytest.raises(StructuralError):
        Graph.build(("a", "b"), [("a", "a", 1.0)])
    with pytest.raises(StructuralError):
        Graph.build(("a", "b"), [("a", "b", -1.0)])
    with pytest.raises(StructuralError):
        Graph.build(("a", ""), [])


def test_parallel_edges_allowed():
    g = Graph.build(("a", "b"), [("a", "b", 1.0), ("b", "a", 2.0)])
    assert g.edge_count == 2
    assert cut_weight(g, frozenset({0, 1})) == 3.0


def test_components_of_cut():
    g = square()
    part = components(g, frozenset({0, 2}))
    assert part.component_count == 2
    assert part.same_component("a", "d")
    assert part.same_component("b", "c")
    assert not part.same_component("a", "b")


def test_component_ids_are_canonical():
    # ids follow the lexicographically smallest member of each component
    g = Graph.build(("b", "a", "c"), [("b", "a", 1.0), ("a", "c", 1.0)])
    part = components(g, frozenset({0, 1}))
    by_node = {v: part.assignment[v] for v in g.nodes}
    assert by_node["a"] == 0
    assert by_node["b"] == 1
    assert by_node["c"] == 2


def test_cut_weight_and_check_cut():
    g = square()
    assert cut_weight(g, frozenset({1, 3})) == 6.0
    with pytest.raises(StructuralError):
        g.check_cut({7})


def test_boundary_matches_dichromatic():
    g = square()
    side = {"a", "b"}
    cut = boundary(g, side)
    labels = {v: (0 if v in side else 1) for v in g.nodes}
    assert cut == dichromatic_edges(g, labels)
    assert cut_weight(g, cut) == 6.0


def test_contract_merges_and_tracks_origin():
    g = square()
    res = contract(g, [("a", "b")])
    assert res.graph.node_count == 3
    assert res.node_map["b"] == res.node_map["a"] == "a"
    # edge (a,b) disappears; the rest keep their weights and provenance
    weights = sorted(w for _, _, w in res.graph.edges)
    assert weights == [2.0, 3.0, 4.0]
    for new_idx, old_idx in enumerate(res.edge_origin):
        assert res.graph.edges[new_idx][2] == g.edges[old_idx][2]


def test_contract_rejects_overlap_and_empty():
    g = square()
    with pytest.raises(StructuralError):
        contract(g, [("a", "b"), ("b", "c")])
    with pytest.raises(StructuralError):
        contract(g, [()])


def test_expand_cut_round_trip():
    g = square()
    res = contract(g, [("a", "b")])
    inner = frozenset({i for i, (u, v, w) in enumerate(res.graph.edges) if w in (2.0, 4.0)})
    outer = expand_cut(res, inner)
    assert outer == frozenset({1, 3})
    assert cut_weight(g, outer) == cut_weight(res.graph, inner)


def test_induced_cut_refines_without_breaking_components():
    # dropping cut edges whose endpoints stayed together never merges parts
    rng = corpus_rng(11)
    for _ in range(60):
        g = random_connected_graph(rng, max_nodes=7, max_edges=11)
        m = g.edge_count
        cut = frozenset(int(i) for i in rng.choice(m, size=min(m, 4), replace=False))
        part = components(g, cut)
        induced = frozenset(
            e for e in cut
            if not part.same_component(g.edges[e][0], g.edges[e][1])
        )
        again = components(g, induced)
        assert again.component_count == part.component_count
        for v in g.nodes:
            for u in g.nodes:
                assert part.same_component(u, v) == again.same_component(u, v)
        assert cut_weight(g, induced) <= cut_weight(g, cut)
