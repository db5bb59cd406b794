"""Minimum s-t cuts, isolating cuts, and Gomory-Hu trees."""
import itertools

import pytest

from helpers import brute_min_separating_cut, corpus_rng, random_connected_graph
from repcut.graph import Graph, components, cut_weight
from repcut.mincut import gh_query, gomory_hu, isolating_cut, min_st_cut


def test_min_st_cut_single_edge():
    g = Graph.build(("a", "b"), [("a", "b", 3.0)])
    res = min_st_cut(g, "a", "b")
    assert res.weight == 3.0
    assert res.cut == frozenset({0})
    assert res.source_side == frozenset({"a"})


def test_min_st_cut_path_picks_cheapest():
    g = Graph.build(("a", "b", "c"), [("a", "b", 5.0), ("b", "c", 2.0)])
    res = min_st_cut(g, "a", "c")
    assert res.weight == 2.0
    assert res.cut == frozenset({1})


def test_min_st_cut_source_side_is_minimal():
    # tie between the two unit edges: minimal side keeps just the source
    g = Graph.build(("s", "m", "t"), [("s", "m", 1.0), ("m", "t", 1.0)])
    res = min_st_cut(g, "s", "t")
    assert res.weight == 1.0
    assert res.source_side == frozenset({"s"})


def test_min_st_cut_matches_brute_force():
    rng = corpus_rng(21)
    for _ in range(40):
        g = random_connected_graph(rng, max_nodes=6, max_edges=9)
        s, t = g.nodes[0], g.nodes[-1]
        res = min_st_cut(g, s, t)
        assert res.weight == pytest.approx(brute_min_separating_cut(g, s, {t}))
        # reported cut actually disconnects s from t and matches the weight
        part = components(g, res.cut)
        assert not part.same_component(s, t)
        assert cut_weight(g, res.cut) == pytest.approx(res.weight)


def test_isolating_cut_matches_brute_force():
    rng = corpus_rng(22)
    for _ in range(30):
        g = random_connected_graph(rng, max_nodes=6, max_edges=9)
        if g.node_count < 3:
            continue
        v = g.nodes[0]
        others = set(g.nodes[1:3])
        res = isolating_cut(g, v, others)
        assert res.weight == pytest.approx(brute_min_separating_cut(g, v, others))
        part = components(g, res.cut)
        for o in others:
            assert not part.same_component(v, o)


def test_gomory_hu_tree_answers_all_pairs():
    rng = corpus_rng(23)
    for _ in range(25):
        g = random_connected_graph(rng, max_nodes=7, max_edges=11)
        tree = gomory_hu(g)
        tg = tree.as_graph()
        assert tg.node_count == g.node_count
        assert tg.edge_count == g.node_count - 1
        for s, t in itertools.combinations(g.nodes, 2):
            w, side = gh_query(tree, s, t)
            assert w == pytest.approx(min_st_cut(g, s, t).weight)
            assert s in side and t not in side
            # the split side is a real cut of that weight in g
            assert sum(
                wt for u, v, wt in g.edges if (u in side) != (v in side)
            ) == pytest.approx(w)


def test_gh_tree_of_tree_is_itself():
    g = Graph.build(
        ("a", "b", "c", "d"),
        [("a", "b", 4.0), ("b", "c", 1.0), ("b", "d", 2.0)],
    )
    tree = gomory_hu(g)
    got = {frozenset((u, v)): w for u, v, w in tree.as_graph().edges}
    want = {frozenset((u, v)): w for u, v, w in g.edges}
    assert got == want


def test_unknown_nodes_rejected():
    g = Graph.build(("a", "b"), [("a", "b", 1.0)])
    from repcut.errors import StructuralError
    with pytest.raises(StructuralError):
        min_st_cut(g, "a", "zz")
