"""End-to-end relax-and-round pipelines for multiway and lifted cuts."""
from __future__ import annotations

import pytest

from repcut.errors import PreconditionError
from repcut.graph import Graph, cut_weight
from repcut.multiway import solve_lifted_cut, solve_multiway_cut
from repcut.oracle import exact_multiway_cut
from repcut.rounding import RoundingParams

from helpers import (
    corpus_rng,
    exhaustive_labeling_optimum,
    random_connected_graph,
    random_lifted_instance,
)


def test_two_terminal_path_is_solved_exactly():
    g = Graph.build(
        ("a", "b", "c"), [("a", "b", 3.0), ("b", "c", 1.0)]
    )
    res = solve_multiway_cut(g, ("a", "c"), samples=8)
    assert res.weight == 1.0
    assert res.cut == frozenset({1})
    assert cut_weight(g, res.cut) == res.weight
    # the relaxation never exceeds the integral optimum
    assert res.lp_cut_value <= 1.0 + 1e-9
    assert res.lp_raw == pytest.approx(2.0 * res.lp_cut_value)


def test_multiway_input_validation():
    g = Graph.build(("a", "b"), [("a", "b", 1.0)])
    with pytest.raises(PreconditionError):
        solve_multiway_cut(g, ("a",))
    with pytest.raises(PreconditionError):
        solve_multiway_cut(g, ("a", "a"))
    with pytest.raises(PreconditionError):
        solve_multiway_cut(g, ("a", "b"), samples=0)


def test_multiway_brackets_between_lp_and_twice_optimum():
    rng = corpus_rng(7501)
    params = RoundingParams(seed=40)
    done = 0
    while done < 12:
        g = random_connected_graph(rng, min_nodes=4, max_nodes=7, max_edges=10)
        k = int(rng.integers(2, 4))
        terms = tuple(g.nodes[i] for i in rng.choice(g.node_count, k, replace=False))
        res = solve_multiway_cut(g, terms, params, samples=16)
        _, opt = exact_multiway_cut(g, terms)
        assert res.lp_cut_value <= opt + 1e-6
        assert opt - 1e-9 <= res.weight <= 2.0 * opt + 1e-9
        for i, t in enumerate(terms):
            assert res.labeling.assignment[t] == i
        done += 1


def test_lifted_pipeline_brackets_the_exhaustive_optimum():
    rng = corpus_rng(7502)
    params = RoundingParams(seed=41)
    for _ in range(10):
        inst = random_lifted_instance(rng, min_free=2, max_free=3)
        res = solve_lifted_cut(inst, params, samples=16)
        opt = exhaustive_labeling_optimum(inst)
        assert res.lp_cut_value <= opt + 1e-6
        assert opt - 1e-9 <= res.weight <= 2.0 * opt + 1e-9
        for v, l in res.labeling.assignment.items():
            assert l in inst.labels[v]


def test_lifted_solver_rejects_other_modes():
    from repcut.relax import MULTIWAY, LabelingInstance, uniform_labels

    g = Graph.build(("a", "b"), [("a", "b", 1.0)])
    inst = LabelingInstance(
        g, 2, uniform_labels(g, 2, {"a": 0, "b": 1}), ("a", "b"), MULTIWAY
    )
    with pytest.raises(PreconditionError):
        solve_lifted_cut(inst)


def test_same_seed_same_result_and_threads_do_not_change_it():
    rng = corpus_rng(7503)
    inst = random_lifted_instance(rng, min_free=3, max_free=4)
    params = RoundingParams(seed=77)
    a = solve_lifted_cut(inst, params, samples=12, threads=1)
    b = solve_lifted_cut(inst, params, samples=12, threads=1)
    c = solve_lifted_cut(inst, params, samples=12, threads=4)
    assert a.labeling.assignment == b.labeling.assignment == c.labeling.assignment
    assert a.weight == b.weight == c.weight
    assert a.cut == c.cut


def test_more_samples_never_hurt():
    rng = corpus_rng(7504)
    for _ in range(5):
        inst = random_lifted_instance(rng)
        params = RoundingParams(seed=13)
        few = solve_lifted_cut(inst, params, samples=4)
        many = solve_lifted_cut(inst, params, samples=16)
        # the first four seeds are a prefix of the sixteen
        assert many.weight <= few.weight + 1e-12
