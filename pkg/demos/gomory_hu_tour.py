"""Build a Gomory-Hu tree and use it for all-pairs min cuts and k-cut style solving.

One max-flow per node gives a tree whose path minima answer every min-cut
query.  The same tree drives the (2 - 2/q)-approximation: run the exact tree
solver on it, then take the min-cut splits behind the chosen tree edges.
"""
import itertools

from repcut.graph import Graph
from repcut.mincut import gh_query, gomory_hu, min_st_cut
from repcut.oracle import exact_solve
from repcut.variants import SINGLE_TO_SINGLE, VariantInstance, solve_single_to_single_gh

g = Graph.build(
    ("a", "b", "c", "d", "e", "f"),
    [
        ("a", "b", 6.0), ("a", "c", 4.0), ("b", "c", 3.0),
        ("c", "d", 2.0), ("d", "e", 5.0), ("d", "f", 3.0),
        ("e", "f", 7.0), ("b", "e", 1.0),
    ],
)

tree = gomory_hu(g)
print("gomory-hu tree edges:")
for u, v, w in tree.tree_edges:
    print(f"  {u} - {v}  weight {w:.0f}")

print("\nall-pairs min cuts, tree vs direct max-flow:")
for s, t in itertools.combinations(g.nodes, 2):
    via_tree, side = gh_query(tree, s, t)
    direct = min_st_cut(g, s, t).weight
    mark = "ok" if via_tree == direct else "MISMATCH"
    print(f"  {s}-{t}: tree {via_tree:4.0f}  flow {direct:4.0f}  {mark}")
    assert via_tree == direct

# q-way separation with singleton candidate sets: split a, d, f apart
inst = VariantInstance.build(SINGLE_TO_SINGLE, g, [("a",), ("d",), ("f",)])
approx = solve_single_to_single_gh(inst)
exact = exact_solve(inst)
q = inst.q
print(f"\nseparate {{a}}, {{d}}, {{f}} (q={q}, guarantee {2 - 2 / q:.3f}x):")
print(f"  tree-guided union weight {approx.weight:.0f}, exact optimum {exact.weight:.0f}")
print(f"  cut edges: {sorted(g.edges[e][:2] for e in approx.cut)}")
assert approx.weight <= (2 - 2 / q) * exact.weight + 1e-9
