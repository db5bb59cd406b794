"""Minimum s-t cuts, isolating cuts, and Gomory-Hu trees.

Undirected graphs are solved by the push-relabel kernel on a symmetric
capacity matrix.  min_st_cut returns the source side that is minimal with
respect to inclusion (the residual-reachable set from s), which makes every
cut here canonical and reproducible.  The Gomory-Hu tree is built with
Gusfield's variant: n - 1 max-flow calls on the original graph, no
contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import PreconditionError, SolverFailureError, StructuralError
from .flow import max_flow_dense, residual_reachable
from .graph import Cut, Graph, boundary, contract, cut_weight, expand_cut

_TOL = 1e-9


@dataclass(frozen=True)
class StCutResult:
    weight: float
    source_side: frozenset[str]
    cut: Cut


def _capacity_matrix(g: Graph) -> np.ndarray:
    n = g.node_count
    cap = np.zeros((n, n), dtype=np.float64)
    idx = g.index
    for u, v, w in g.edges:
        ui, vi = idx[u], idx[v]
        cap[ui, vi] += w
        cap[vi, ui] += w
    return cap


def min_st_cut(g: Graph, s: str, t: str) -> StCutResult:
    """Minimum weight cut separating s from t, with the minimal source side."""
    g.check_nodes([s, t])
    if s == t:
        raise PreconditionError("s and t must differ")
    cap = _capacity_matrix(g)
    idx = g.index
    value, flow = max_flow_dense(cap, idx[s], idx[t])
    reach = residual_reachable(cap, flow, idx[s])
    if reach[idx[t]]:
        raise SolverFailureError("sink reachable after max flow")
    side = frozenset(name for name in g.nodes if reach[idx[name]])
    cut = boundary(g, side)
    w = cut_weight(g, cut)
    if abs(w - value) > _TOL * max(1.0, w + value):
        raise SolverFailureError(f"cut weight {w} != flow value {value}")
    return StCutResult(w, side, cut)


def isolating_cut(g: Graph, v: str, others: Iterable[str]) -> StCutResult:
    """Minimum cut separating v from every node in `others`.

    Contracts `others` into one sink and reads the cut back through the edge
    provenance, so the result references original edge indices.
    """
    other_set = g.check_nodes(others)
    if not other_set:
        raise PreconditionError("need at least one node to separate from")
    if v in other_set:
        raise PreconditionError(f"{v!r} cannot be separated from itself")
    g.check_nodes([v])
    res = contract(g, [other_set])
    sink = res.node_map[next(iter(other_set))]
    inner = min_st_cut(res.graph, v, sink)
    side = inner.source_side  # contraction keeps non-contracted ids
    cut = frozenset(expand_cut(res, inner.cut))
    return StCutResult(inner.weight, side, cut)


@dataclass(frozen=True)
class GomoryHuTree:
    """Tree on the graph's nodes whose path minima are all-pairs min cuts."""

    nodes: tuple[str, ...]
    tree_edges: tuple[tuple[str, str, float], ...]

    def as_graph(self) -> Graph:
        return Graph(self.nodes, self.tree_edges)


def gomory_hu(g: Graph) -> GomoryHuTree:
    """Gusfield's Gomory-Hu construction.

    Nodes are processed in lexicographic order against a parent array rooted
    at the lexicographically smallest node; each step is one max-flow on the
    original graph.  Works on disconnected graphs (zero-weight tree edges).
    """
    if g.node_count == 0:
        raise PreconditionError("empty graph")
    order = sorted(g.nodes)
    if g.node_count == 1:
        return GomoryHuTree(g.nodes, ())
    parent = {name: order[0] for name in order}
    weight = {name: 0.0 for name in order}
    for i in range(1, len(order)):
        u = order[i]
        p = parent[u]
        res = min_st_cut(g, u, p)
        weight[u] = res.weight
        side = res.source_side
        # every node hanging off p that landed on u's side moves under u,
        # processed or not; this is what makes the splits genuine min cuts
        for v in order[1:]:
            if v != u and v in side and parent[v] == p:
                parent[v] = u
        if parent[p] in side:
            parent[u] = parent[p]
            parent[p] = u
            weight[u] = weight[p]
            weight[p] = res.weight
    edges = tuple((u, parent[u], weight[u]) for u in order[1:])
    return GomoryHuTree(g.nodes, edges)


def gh_query(tree: GomoryHuTree, s: str, u: str) -> tuple[float, frozenset[str]]:
    """Min s-u cut weight and its s-side split read off the tree.

    The split is the component containing s after removing the lightest edge
    on the tree path; among equally light edges the one closest to s wins.
    """
    if s == u:
        raise PreconditionError("s and u must differ")
    tg = tree.as_graph()
    tg.check_nodes([s, u])
    # parents via BFS from s
    idx = tg.index
    parent_edge: dict[int, tuple[int, int]] = {}  # node -> (edge idx, parent)
    seen = {idx[s]}
    queue = [idx[s]]
    while queue:
        cur = queue.pop(0)
        for e, other in tg.adjacency[cur]:
            if other not in seen:
                seen.add(other)
                parent_edge[other] = (e, cur)
                queue.append(other)
    if idx[u] not in parent_edge:
        # different components: cut weight 0, split is s's tree component
        side = frozenset(tg.nodes[i] for i in seen)
        return 0.0, side
    path: list[int] = []  # edge indices from u back to s
    cur = idx[u]
    while cur != idx[s]:
        e, par = parent_edge[cur]
        path.append(e)
        cur = par
    path.reverse()  # now ordered from s toward u
    best_e = path[0]
    best_w = tg.edges[best_e][2]
    for e in path[1:]:
        if tg.edges[e][2] < best_w - _TOL:
            best_e, best_w = e, tg.edges[e][2]
    from .graph import components

    part = components(tg, [best_e])
    cid = part.assignment[s]
    side = frozenset(n for n in tg.nodes if part.assignment[n] == cid)
    return best_w, side
