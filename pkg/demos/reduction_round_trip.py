"""Two reductions, both directions: solutions travel across and keep their weight.

First a hitting-set instance becomes a fixed-to-single cut problem on a star
(cut edges = chosen elements).  Then a some-to-some instance becomes a
Steiner multicut over representative pairs and comes back.
"""
from repcut.graph import Graph, cut_weight
from repcut.oracle import exact_solve, exact_steiner_multicut
from repcut.reductions import (
    HittingSetInstance,
    hitting_set_to_fixed_to_single,
    some_to_some_to_steiner,
)
from repcut.variants import SOME_TO_SOME, VariantInstance, validate_solution

print("hitting set -> fixed-to-single")
hs = HittingSetInstance.build(
    ("red", "green", "blue", "amber"),
    [("red", "green"), ("green", "blue"), ("blue", "amber"), ("red", "amber")],
)
red = hitting_set_to_fixed_to_single(hs)
inst = red.reduced
print(f"  universe {hs.universe}, {len(hs.subsets)} subsets to hit")
print(f"  reduced: {inst.graph.node_count} nodes, q={inst.q}, hub {inst.fixed!r}")

cut_sol = exact_solve(inst)
chosen = red.backward_solution(cut_sol)
print(f"  min cut weight {cut_sol.weight:.0f} -> hitting set {sorted(chosen)}")
assert all(set(s) & chosen for s in hs.subsets)

sol = red.forward_solution(frozenset({"green", "amber"}))
print(f"  {{green, amber}} forward -> cut weight {sol.weight:.0f}, "
      f"valid: {validate_solution(inst, sol).ok}")

print("\nsome-to-some -> steiner multicut")
g = Graph.build(
    ("a", "b", "c", "d"),
    [("a", "b", 1.0), ("b", "c", 2.0), ("c", "d", 3.0), ("a", "d", 4.0)],
)
inst2 = VariantInstance.build(SOME_TO_SOME, g, [("a", "b"), ("c",), ("d",)])
red2 = some_to_some_to_steiner(inst2)
st = red2.reduced
print(f"  q={inst2.q} candidate sets -> {len(st.groups)} steiner groups:")
for grp in st.groups:
    print(f"    {sorted(grp)}")

best = exact_solve(inst2)
steiner_cut, w = exact_steiner_multicut(st.graph, st.groups)
print(f"  optima: some-to-some {best.weight:.0f}, steiner {w:.0f}")
assert best.weight == w

back = red2.backward_solution(steiner_cut)
print(f"  steiner cut maps back to weight {back.weight:.0f}, "
      f"valid: {validate_solution(inst2, back).ok}")
fwd = red2.forward_solution(best)
print(f"  best solution maps forward to steiner weight "
      f"{cut_weight(st.graph, fwd):.0f}")
