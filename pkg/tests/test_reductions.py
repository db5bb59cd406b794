"""Weight preservation and solution maps for all five reductions."""
from __future__ import annotations

import itertools

import pytest

from repcut.errors import InstanceValidationError, PreconditionError
from repcut.graph import Graph, components, cut_weight
from repcut.oracle import exact_solve, exact_steiner_multicut
from repcut.reductions import (
    HittingSetInstance,
    SteinerMulticutInstance,
    fixed_to_single_to_some_to_all,
    fixed_to_single_to_some_to_single,
    hitting_set_to_fixed_to_single,
    some_to_some_to_steiner,
    steiner_to_some_to_some,
)
from repcut.variants import (
    FIXED_TO_SINGLE,
    SOME_TO_SOME,
    VariantInstance,
    check_feasibility,
    validate_solution,
)

from helpers import corpus_rng, random_connected_graph, random_instance


def _min_hitting_set(hs: HittingSetInstance) -> frozenset[str]:
    n = len(hs.universe)
    best: frozenset[str] | None = None
    for size in range(n + 1):
        for combo in itertools.combinations(hs.universe, size):
            chosen = frozenset(combo)
            if all(s & chosen for s in hs.subsets):
                return chosen
    raise AssertionError("full universe always hits every nonempty subset")


def _random_hitting_set(rng) -> HittingSetInstance:
    n = int(rng.integers(3, 7))
    universe = tuple(f"u{i}" for i in range(n))
    subsets = []
    for _ in range(int(rng.integers(2, 5))):
        size = int(rng.integers(1, n + 1))
        picks = rng.choice(n, size=size, replace=False)
        subsets.append(tuple(universe[i] for i in sorted(picks)))
    return HittingSetInstance.build(universe, subsets)


def test_hitting_set_instance_validation():
    with pytest.raises(InstanceValidationError):
        HittingSetInstance.build(("a", "a"), [("a",)])
    with pytest.raises(InstanceValidationError):
        HittingSetInstance.build(("a",), [])
    with pytest.raises(InstanceValidationError):
        HittingSetInstance.build(("a",), [()])
    with pytest.raises(InstanceValidationError):
        HittingSetInstance.build(("a",), [("b",)])


def test_hitting_set_reduction_preserves_optimum():
    rng = corpus_rng(7401)
    for _ in range(20):
        hs = _random_hitting_set(rng)
        red = hitting_set_to_fixed_to_single(hs)
        inst = red.reduced
        assert inst.variant == FIXED_TO_SINGLE
        opt_set = _min_hitting_set(hs)
        opt_cut = exact_solve(inst)
        assert opt_cut.weight == pytest.approx(float(len(opt_set)))
        # forward: an optimal hitting set becomes an equal-weight solution
        sol = red.forward_solution(opt_set)
        assert validate_solution(inst, sol).ok
        assert sol.weight == pytest.approx(float(len(opt_set)))
        # backward: the oracle's cut becomes an equal-size hitting set
        back = red.backward_solution(opt_cut)
        assert len(back) == len(opt_set)
        assert all(s & back for s in hs.subsets)


def test_hitting_set_forward_rejects_non_hitting_input():
    hs = HittingSetInstance.build(("a", "b", "c"), [("a", "b"), ("c",)])
    red = hitting_set_to_fixed_to_single(hs)
    with pytest.raises(PreconditionError):
        red.forward_solution(frozenset({"a"}))  # misses {"c"}
    with pytest.raises(PreconditionError):
        red.forward_solution(frozenset({"zz"}))


def _feasible_fts(rng, min_q: int = 1):
    while True:
        inst = random_instance(rng, FIXED_TO_SINGLE, max_nodes=6, max_edges=9)
        if inst.q >= min_q and check_feasibility(inst).feasible:
            return inst


def test_fixed_to_single_to_some_to_single_preserves_optimum():
    rng = corpus_rng(7402)
    for _ in range(15):
        inst = _feasible_fts(rng)
        red = fixed_to_single_to_some_to_single(inst)
        assert red.reduced.variant == "some-to-single"
        assert red.reduced.q == inst.q + 1
        a = exact_solve(inst)
        b = exact_solve(red.reduced)
        assert a.weight == pytest.approx(b.weight)
        fwd = red.forward_solution(a)
        assert validate_solution(red.reduced, fwd).ok
        assert fwd.weight == pytest.approx(a.weight)
        back = red.backward_solution(b)
        assert validate_solution(inst, back).ok
        assert back.weight == pytest.approx(a.weight)


def test_fixed_to_single_to_some_to_all_preserves_optimum():
    rng = corpus_rng(7403)
    for _ in range(15):
        inst = _feasible_fts(rng, min_q=2)
        red = fixed_to_single_to_some_to_all(inst)
        assert red.reduced.variant == "some-to-all"
        big = red.reduced.graph
        assert big.node_count == inst.graph.node_count + inst.q
        assert big.edges == inst.graph.edges
        a = exact_solve(inst)
        b = exact_solve(red.reduced)
        assert a.weight == pytest.approx(b.weight)
        fwd = red.forward_solution(a)
        assert validate_solution(red.reduced, fwd).ok
        assert fwd.weight == pytest.approx(a.weight)
        back = red.backward_solution(b)
        assert validate_solution(inst, back).ok
        assert back.weight == pytest.approx(a.weight)


def test_fixed_to_single_to_some_to_all_needs_two_sets():
    g = Graph.build(("a", "b"), [("a", "b", 1.0)])
    inst = VariantInstance.build(FIXED_TO_SINGLE, g, [("b",)], fixed="a")
    with pytest.raises(PreconditionError):
        fixed_to_single_to_some_to_all(inst)
    with pytest.raises(PreconditionError):
        fixed_to_single_to_some_to_single(
            VariantInstance.build(SOME_TO_SOME, g, [("a",), ("b",)])
        )


def _feasible_some_to_some(rng):
    while True:
        inst = random_instance(rng, SOME_TO_SOME, max_nodes=6, max_edges=9, max_q=3)
        if inst.q >= 2 and check_feasibility(inst).feasible:
            return inst


def test_some_to_some_to_steiner_preserves_optimum():
    rng = corpus_rng(7404)
    for _ in range(15):
        inst = _feasible_some_to_some(rng)
        red = some_to_some_to_steiner(inst)
        st: SteinerMulticutInstance = red.reduced
        assert len(st.groups) == inst.q * (inst.q - 1) // 2
        a = exact_solve(inst)
        cut, w = exact_steiner_multicut(st.graph, st.groups)
        assert a.weight == pytest.approx(w)
        fwd = red.forward_solution(a)
        part = components(st.graph, fwd)
        assert all(
            len({part.assignment[v] for v in x}) >= 2 for x in st.groups
        )
        assert cut_weight(st.graph, fwd) == pytest.approx(a.weight)
        back = red.backward_solution(cut)
        assert validate_solution(inst, back).ok
        assert back.weight == pytest.approx(w)


def test_steiner_to_some_to_some_preserves_optimum():
    rng = corpus_rng(7405)
    done = 0
    while done < 15:
        g = random_connected_graph(rng, min_nodes=3, max_nodes=6, max_edges=9)
        groups = []
        for _ in range(int(rng.integers(1, 3))):
            size = int(rng.integers(2, min(4, g.node_count) + 1))
            picks = rng.choice(g.node_count, size=size, replace=False)
            groups.append(tuple(g.nodes[i] for i in sorted(picks)))
        st = SteinerMulticutInstance.build(g, groups)
        red = steiner_to_some_to_some(st)
        assert red.reduced.q == 2 * len(groups)
        cut, w = exact_steiner_multicut(g, st.groups)
        b = exact_solve(red.reduced)
        assert b.weight == pytest.approx(w)
        fwd = red.forward_solution(cut)
        assert validate_solution(red.reduced, fwd).ok
        assert fwd.weight == pytest.approx(w)
        back = red.backward_solution(b)
        part = components(g, back)
        assert all(len({part.assignment[v] for v in x}) >= 2 for x in st.groups)
        assert cut_weight(g, back) == pytest.approx(w)
        done += 1


def test_steiner_reduction_rejects_empty_and_unsplit_cuts():
    g = Graph.build(("a", "b", "c"), [("a", "b", 1.0), ("b", "c", 1.0)])
    with pytest.raises(PreconditionError):
        steiner_to_some_to_some(SteinerMulticutInstance.build(g, []))
    st = SteinerMulticutInstance.build(g, [("a", "c")])
    red = steiner_to_some_to_some(st)
    with pytest.raises(PreconditionError):
        red.forward_solution(frozenset())  # leaves the group whole
    inst = VariantInstance.build(SOME_TO_SOME, g, [("a",), ("c",)])
    red2 = some_to_some_to_steiner(inst)
    from repcut.variants import CutSolution, RepresentativeChoice

    whole = CutSolution(
        frozenset(), RepresentativeChoice(pairs={(0, 1): "a", (1, 0): "c"}), 0.0
    )
    with pytest.raises(PreconditionError):
        red2.forward_solution(whole)


def test_fresh_names_dodge_existing_nodes():
    g = Graph.build(
        ("s", "_aux0", "x"), [("s", "_aux0", 2.0), ("s", "x", 1.0)]
    )
    inst = VariantInstance.build(
        FIXED_TO_SINGLE, g, [("_aux0",), ("x",)], fixed="s"
    )
    red = fixed_to_single_to_some_to_all(inst)
    aux = red.data["aux"]
    assert len(set(aux)) == 2 and "_aux0" not in aux
    assert red.reduced.graph.node_count == 5
    hs = HittingSetInstance.build(("_hub0", "y"), [("_hub0",), ("y",)])
    red2 = hitting_set_to_fixed_to_single(hs)
    assert red2.data["hub"] not in hs.universe
    sol = red2.forward_solution(frozenset({"_hub0", "y"}))
    assert sol.weight == 2.0
