"""Walk one multiway-cut instance through the full relax-and-round pipeline.

The instance is a known integrality-gap gadget: three terminals, three
middle nodes, each middle node pulled toward two terminals.  The simplex
relaxation places every middle node halfway between its two terminals and
undercuts the integral optimum, so the rounding schemes have real
fractional mass to work with.
"""
from repcut.graph import Graph
from repcut.multiway import solve_multiway_cut
from repcut.oracle import exact_multiway_cut
from repcut.relax import MULTIWAY, LabelingInstance, align_instance, solve_relaxation, uniform_labels
from repcut.rounding import (
    RoundingParams,
    round_descending_thresholds,
    round_independent_thresholds,
    round_kleinberg_tardos,
    round_single_threshold,
)

g = Graph.build(
    ("t1", "t2", "t3", "u12", "u13", "u23"),
    [
        ("t1", "u12", 2.0), ("t2", "u12", 2.0),
        ("t1", "u13", 2.0), ("t3", "u13", 2.0),
        ("t2", "u23", 2.0), ("t3", "u23", 2.0),
        ("u12", "u13", 1.0), ("u12", "u23", 1.0), ("u13", "u23", 1.0),
    ],
)
terminals = ("t1", "t2", "t3")

print("graph:", g.node_count, "nodes,", g.edge_count, "edges,",
      "total weight", g.total_weight())

pinned = {t: i for i, t in enumerate(terminals)}
inst = LabelingInstance(
    g, len(terminals), uniform_labels(g, len(terminals), pinned), terminals, MULTIWAY
)
emb, raw, cut_value = solve_relaxation(inst)
print(f"relaxation: raw objective {raw:.3f}, cut-comparable value {cut_value:.3f}")
for v in g.nodes:
    point = ", ".join(f"{x:.2f}" for x in emb.points[v])
    print(f"  {v:4s}: ({point})")

# one draw from each scheme on the axis-aligned embedding
aligned_inst, aligned = align_instance(inst, emb)
print("\nsingle rounding draws (seed 3):")
for name, lab in (
    ("kleinberg-tardos", round_kleinberg_tardos(aligned_inst, aligned.embedding, 3)),
    ("single-threshold", round_single_threshold(aligned_inst, aligned.embedding, 3)),
    ("descending", round_descending_thresholds(aligned_inst, aligned.embedding, 3)),
    ("independent", round_independent_thresholds(aligned_inst, aligned.embedding, 3)),
):
    r = lab.restrict(g.nodes)
    middles = {v: r.assignment[v] for v in ("u12", "u13", "u23")}
    print(f"  {name:18s} weight {r.weight(g):5.1f}  middles -> {middles}")

best = solve_multiway_cut(g, terminals, RoundingParams(seed=3), samples=64)
opt_cut, opt = exact_multiway_cut(g, terminals)
print(f"\nbest of 64 seeded samples: {best.weight:.1f}")
print(f"exact optimum:             {opt:.1f}")
print(f"integrality gap here:      {opt / cut_value:.4f}")
assert best.weight <= 2.0 * opt
