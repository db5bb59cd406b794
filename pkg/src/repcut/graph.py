"""Undirected weighted multigraphs and cut primitives.

Nodes are strings at the interface and dense integers internally.  Edges are
referenced by their declaration index, which keeps parallel edges distinct;
a cut is simply a set of edge indices.  Graphs are immutable after
construction, so they can be shared freely between solvers and threads.

Every deterministic tie-break in the package orders nodes lexicographically
by id string and edges by declaration index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, Iterable, Mapping, Sequence

import math

from .errors import StructuralError

Cut = frozenset[int]


def _check_weight(w: float) -> float:
    w = float(w)
    if not math.isfinite(w) or w < 0.0:
        raise StructuralError(f"edge weight must be finite and >= 0, got {w!r}")
    return w


@dataclass(frozen=True)
class Graph:
    """Immutable undirected multigraph with nonnegative float weights.

    `nodes` fixes the declaration order; `edges` holds (u, v, weight) triples.
    Self-loops are rejected, parallel edges are allowed and never merged.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, float], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for name in self.nodes:
            if not isinstance(name, str) or not name:
                raise StructuralError(f"node ids must be non-empty strings, got {name!r}")
            if name in seen:
                raise StructuralError(f"duplicate node id {name!r}")
            seen.add(name)
        for idx, (u, v, w) in enumerate(self.edges):
            if u not in seen or v not in seen:
                raise StructuralError(f"edge {idx} references undeclared node")
            if u == v:
                raise StructuralError(f"edge {idx} is a self-loop on {u!r}")
            _check_weight(w)

    @staticmethod
    def build(nodes: Iterable[str], edges: Iterable[tuple[str, str, float]]) -> "Graph":
        return Graph(tuple(nodes), tuple((u, v, float(w)) for u, v, w in edges))

    @cached_property
    def index(self) -> Mapping[str, int]:
        """Node id to declaration position."""
        return {name: i for i, name in enumerate(self.nodes)}

    @cached_property
    def lex_rank(self) -> Mapping[str, int]:
        """Node id to its position in lexicographic id order."""
        return {name: i for i, name in enumerate(sorted(self.nodes))}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node (edge index, other endpoint index) pairs, by declaration order."""
        idx = self.index
        adj: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for e, (u, v, _) in enumerate(self.edges):
            ui, vi = idx[u], idx[v]
            adj[ui].append((e, vi))
            adj[vi].append((e, ui))
        return tuple(tuple(a) for a in adj)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)

    def check_cut(self, cut: Iterable[int]) -> Cut:
        c = frozenset(cut)
        for e in c:
            if not isinstance(e, int) or e < 0 or e >= len(self.edges):
                raise StructuralError(f"cut references invalid edge index {e!r}")
        return c

    def check_nodes(self, names: Iterable[str]) -> frozenset[str]:
        s = frozenset(names)
        for name in s:
            if name not in self.index:
                raise StructuralError(f"unknown node {name!r}")
        return s


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to a dense component id.

    Component ids are ordered by the lexicographically smallest node they
    contain, so the partition of a given graph and cut is canonical.
    """

    assignment: Mapping[str, int]
    component_count: int

    def component_nodes(self) -> tuple[tuple[str, ...], ...]:
        comps: list[list[str]] = [[] for _ in range(self.component_count)]
        for name in sorted(self.assignment):
            comps[self.assignment[name]].append(name)
        return tuple(tuple(c) for c in comps)

    def same_component(self, a: str, b: str) -> bool:
        return self.assignment[a] == self.assignment[b]


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def components(g: Graph, cut: Iterable[int] = ()) -> Partition:
    """Connected components of g with the cut edges removed."""
    c = g.check_cut(cut)
    uf = _UnionFind(g.node_count)
    idx = g.index
    for e, (u, v, _) in enumerate(g.edges):
        if e not in c:
            uf.union(idx[u], idx[v])
    root_of = [uf.find(i) for i in range(g.node_count)]
    # canonical ids: ascending lexicographically-smallest member
    rep_name: dict[int, str] = {}
    for name in g.nodes:
        r = root_of[idx[name]]
        if r not in rep_name or name < rep_name[r]:
            rep_name[r] = name
    ordered_roots = sorted(rep_name, key=lambda r: rep_name[r])
    comp_id = {r: i for i, r in enumerate(ordered_roots)}
    assignment = {name: comp_id[root_of[idx[name]]] for name in g.nodes}
    return Partition(assignment, len(ordered_roots))


def cut_weight(g: Graph, cut: Iterable[int]) -> float:
    c = g.check_cut(cut)
    return sum(g.edges[e][2] for e in c)


def boundary(g: Graph, side: AbstractSet[str] | Iterable[str]) -> Cut:
    """Edge indices with exactly one endpoint inside `side`."""
    s = g.check_nodes(side)
    out = []
    for e, (u, v, _) in enumerate(g.edges):
        if (u in s) != (v in s):
            out.append(e)
    return frozenset(out)


@dataclass(frozen=True)
class ContractionResult:
    """Result of contracting node groups.

    node_map sends every original node to its surviving node; edge_origin[j]
    is the original index of the contracted graph's edge j (intra-group edges
    are deleted, all others survive in declaration order, parallels kept).
    """

    graph: Graph
    node_map: Mapping[str, str]
    edge_origin: tuple[int, ...]


def contract(g: Graph, groups: Sequence[Iterable[str]]) -> ContractionResult:
    """Contract each group of nodes into a single node.

    Groups must be disjoint.  The contracted node takes the lexicographically
    smallest id of its group, which cannot collide with surviving nodes.
    """
    node_map: dict[str, str] = {name: name for name in g.nodes}
    claimed: set[str] = set()
    for gi, group in enumerate(groups):
        members = g.check_nodes(group)
        if not members:
            raise StructuralError(f"group {gi} is empty")
        if members & claimed:
            raise StructuralError(f"group {gi} overlaps an earlier group")
        claimed |= members
        super_name = min(members)
        for name in members:
            node_map[name] = super_name
    new_nodes: list[str] = []
    for name in g.nodes:
        target = node_map[name]
        if target not in new_nodes:
            new_nodes.append(target)
    new_edges: list[tuple[str, str, float]] = []
    edge_origin: list[int] = []
    for e, (u, v, w) in enumerate(g.edges):
        mu, mv = node_map[u], node_map[v]
        if mu == mv:
            continue
        new_edges.append((mu, mv, w))
        edge_origin.append(e)
    return ContractionResult(
        Graph(tuple(new_nodes), tuple(new_edges)), node_map, tuple(edge_origin)
    )


def expand_cut(res: ContractionResult, cut: Iterable[int]) -> Cut:
    """Lift a cut of the contracted graph back to original edge indices."""
    c = res.graph.check_cut(cut)
    return frozenset(res.edge_origin[e] for e in c)


def dichromatic_edges(g: Graph, labels: Mapping[str, int]) -> Cut:
    """Edges whose endpoints carry different labels."""
    out = []
    for e, (u, v, _) in enumerate(g.edges):
        if labels[u] != labels[v]:
            out.append(e)
    return frozenset(out)
