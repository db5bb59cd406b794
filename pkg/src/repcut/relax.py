"""Simplex-embedding relaxations for labeling problems on graphs.

A labeling instance assigns every node a set of allowed labels out of
`label_count` many; terminal i is pinned to label i.  The relaxation embeds
each node as a point on the probability simplex, zero on forbidden
coordinates, and minimizes the weighted sum of L1 distances across edges.
Three modes share the machinery:

* "multiway"  - every coordinate carries a terminal (classic multiway cut);
* "uml"       - uniform labeling: arbitrary label lists, terminals optional;
* "lifted"    - one extra coordinate beyond the terminals: terminals occupy
                labels 0..q-1 and every non-terminal must allow the last
                label q (the lifted coordinate).

The LP objective is reported raw (sum of w * L1) and cut-comparable
(raw / 2); a labeling's cut weight compares against the latter.

axis_align rewrites an embedded graph so that consecutive embedding points
differ in at most two coordinates, by routing each edge through subdivision
points that move mass pairwise in ascending coordinate order.  Total L1
length along each route is preserved, which keeps the LP objective intact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import InstanceValidationError, PreconditionError, SolverFailureError
from .graph import Graph
from .lp import EQUAL, LESS, LinearProgram, LpSolution, solve_lp

MULTIWAY = "multiway"
UML = "uml"
LIFTED = "lifted"
_MODES = (MULTIWAY, UML, LIFTED)

_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class LabelingInstance:
    graph: Graph
    label_count: int
    labels: Mapping[str, frozenset[int]]
    terminals: tuple[str, ...] = ()
    mode: str = LIFTED

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise InstanceValidationError(f"unknown mode {self.mode!r}")
        if self.label_count < 1:
            raise InstanceValidationError("need at least one label")
        full = range(self.label_count)
        for v in self.graph.nodes:
            if v not in self.labels:
                raise InstanceValidationError(f"node {v!r} has no label list")
            ls = self.labels[v]
            if not ls:
                raise InstanceValidationError(f"node {v!r} has an empty label list")
            if any(l not in full for l in ls):
                raise InstanceValidationError(f"node {v!r} lists an out-of-range label")
        if len(set(self.terminals)) != len(self.terminals):
            raise InstanceValidationError("terminals must be distinct")
        for i, t in enumerate(self.terminals):
            if t not in self.graph.index:
                raise InstanceValidationError(f"terminal {t!r} not in graph")
            if self.labels[t] != frozenset([i]):
                raise InstanceValidationError(
                    f"terminal {t!r} must have label list {{{i}}}, got {sorted(self.labels[t])}"
                )
        if self.mode == MULTIWAY:
            if len(self.terminals) != self.label_count:
                raise InstanceValidationError(
                    "multiway mode needs one terminal per label"
                )
        elif self.mode == LIFTED:
            if len(self.terminals) != self.label_count - 1:
                raise InstanceValidationError(
                    "lifted mode needs exactly label_count - 1 terminals"
                )
            last = self.label_count - 1
            term = set(self.terminals)
            for v in self.graph.nodes:
                if v not in term and last not in self.labels[v]:
                    raise InstanceValidationError(
                        f"non-terminal {v!r} must allow the lifted label {last}"
                    )

    @property
    def free_label(self) -> int:
        """The label processed last by threshold roundings."""
        return self.label_count - 1


def uniform_labels(
    g: Graph, label_count: int, pinned: Mapping[str, int] | None = None
) -> dict[str, frozenset[int]]:
    """Full label lists everywhere except the pinned nodes."""
    full = frozenset(range(label_count))
    out = {v: full for v in g.nodes}
    for v, l in (pinned or {}).items():
        out[v] = frozenset([l])
    return out


@dataclass(frozen=True)
class SimplexEmbedding:
    """One point on the probability simplex per node."""

    dimension: int
    points: Mapping[str, np.ndarray]

    def __post_init__(self) -> None:
        for v, x in self.points.items():
            if x.shape != (self.dimension,):
                raise PreconditionError(f"point for {v!r} has wrong dimension")
            if np.any(x < -1e-12) or abs(float(x.sum()) - 1.0) > 1e-9:
                raise PreconditionError(f"point for {v!r} is off the simplex")

    def matrix(self, nodes: tuple[str, ...]) -> np.ndarray:
        return np.stack([self.points[v] for v in nodes])


@dataclass(frozen=True)
class LiftLpIndex:
    """Variable layout of a relaxation LP.

    coordinate[(node, label)] is the LP column of that simplex coordinate;
    forbidden coordinates have no column and are identically zero.
    distance[(edge, label)] is the column of the |difference| variable, when
    one was created; edges where only one endpoint allows a label fold the
    term into that coordinate's objective coefficient instead.
    """

    coordinate: Mapping[tuple[str, int], int]
    distance: Mapping[tuple[int, int], int]
    variable_count: int


def build_lift_lp(inst: LabelingInstance) -> tuple[LinearProgram, LiftLpIndex]:
    """Linear program of the simplex-embedding relaxation.

    Variables: one per allowed (node, label) coordinate plus one distance
    variable per (edge, label) where both endpoints allow the label.  Rows:
    each node's allowed coordinates sum to one; each distance variable upper
    bounds the coordinate difference from both sides.
    """
    g = inst.graph
    coord: dict[tuple[str, int], int] = {}
    for v in g.nodes:
        for l in sorted(inst.labels[v]):
            coord[(v, l)] = len(coord)
    dist: dict[tuple[int, int], int] = {}
    objective: dict[int, float] = {}
    rows: list[tuple[dict[int, float], str, float]] = []

    for v in g.nodes:
        rows.append(({coord[(v, l)]: 1.0 for l in inst.labels[v]}, EQUAL, 1.0))

    n_coord = len(coord)
    next_var = n_coord
    for e, (u, v, w) in enumerate(g.edges):
        for l in sorted(inst.labels[u] | inst.labels[v]):
            cu = coord.get((u, l))
            cv = coord.get((v, l))
            if cu is not None and cv is not None:
                d = next_var
                next_var += 1
                dist[(e, l)] = d
                objective[d] = objective.get(d, 0.0) + w
                rows.append(({cu: 1.0, cv: -1.0, d: -1.0}, LESS, 0.0))
                rows.append(({cv: 1.0, cu: -1.0, d: -1.0}, LESS, 0.0))
            elif cu is not None:
                # |x_u - 0| = x_u: fold into the objective
                objective[cu] = objective.get(cu, 0.0) + w
            elif cv is not None:
                objective[cv] = objective.get(cv, 0.0) + w

    total = next_var
    obj = [0.0] * total
    for j, c in objective.items():
        obj[j] = c
    lhs = []
    rels = []
    rhs = []
    for row, rel, b in rows:
        dense = [0.0] * total
        for j, c in row.items():
            dense[j] = c
        lhs.append(dense)
        rels.append(rel)
        rhs.append(b)
    program = LinearProgram.build(obj, lhs, rels, rhs)
    return program, LiftLpIndex(coord, dist, total)


def extract_embedding(
    inst: LabelingInstance, index: LiftLpIndex, solution: LpSolution
) -> SimplexEmbedding:
    """Read node points out of an optimal LP solution.

    Clamps solver roundoff (negatives at most 1e-7 in magnitude) to zero and
    renormalizes each point to sum exactly one; forbidden coordinates stay
    exactly zero, which the rounding schemes rely on.
    """
    if solution.status != "optimal" or solution.values is None:
        raise PreconditionError("embedding needs an optimal LP solution")
    vals = solution.values
    pts: dict[str, np.ndarray] = {}
    for v in inst.graph.nodes:
        x = np.zeros(inst.label_count)
        for l in inst.labels[v]:
            value = vals[index.coordinate[(v, l)]]
            if value < -1e-7:
                raise SolverFailureError(f"coordinate ({v}, {l}) is negative: {value}")
            x[l] = max(0.0, value)
        s = float(x.sum())
        if abs(s - 1.0) > 1e-6:
            raise SolverFailureError(f"point for {v!r} sums to {s}")
        x /= s
        pts[v] = x
    return SimplexEmbedding(inst.label_count, pts)


def relaxation_values(sol: LpSolution) -> tuple[float, float]:
    """(raw, cut-comparable) objective values of a solved relaxation."""
    if sol.status != "optimal" or sol.objective_value is None:
        raise PreconditionError("relaxation did not reach optimality")
    raw = sol.objective_value
    return raw, raw / 2.0


def embedding_length(g: Graph, emb: SimplexEmbedding) -> float:
    """Raw objective of an embedding: sum of w * L1 edge lengths."""
    total = 0.0
    for u, v, w in g.edges:
        total += w * float(np.abs(emb.points[u] - emb.points[v]).sum())
    return total


@dataclass(frozen=True)
class AlignedEmbedding:
    """Axis-aligned rewrite of (graph, embedding).

    Every edge of `graph` connects points differing in at most two
    coordinates.  edge_origin maps each new edge index to the original edge
    it subdivides; new_nodes lists the subdivision nodes added.
    """

    graph: Graph
    embedding: SimplexEmbedding
    edge_origin: tuple[int, ...]
    new_nodes: tuple[str, ...] = field(default=())


def _route(x: np.ndarray, y: np.ndarray) -> list[np.ndarray]:
    """Monotone pairwise mass moves from x to y, ascending coordinate order.

    Each step moves mass from the lowest coordinate still above target to the
    lowest still below, so consecutive points differ in exactly two
    coordinates and the total L1 length telescopes to |x - y|_1.
    """
    delta = y - x
    points = [x]
    cur = x.astype(float).copy()
    over = [i for i in range(len(delta)) if delta[i] < -_ALIGN_TOL]
    under = [i for i in range(len(delta)) if delta[i] > _ALIGN_TOL]
    remaining = delta.copy()
    a = b = 0
    while a < len(over) and b < len(under):
        i, j = over[a], under[b]
        move = min(-remaining[i], remaining[j])
        cur = cur.copy()
        cur[i] -= move
        cur[j] += move
        remaining[i] += move
        remaining[j] -= move
        if remaining[i] >= -_ALIGN_TOL:
            a += 1
        if remaining[j] <= _ALIGN_TOL:
            b += 1
        points.append(cur)
    points[-1] = y  # absorb tolerance dust at the endpoint
    return points


def axis_align(g: Graph, emb: SimplexEmbedding) -> AlignedEmbedding:
    """Subdivide edges until every edge is axis-aligned in the embedding.

    Edges already differing in at most two coordinates are kept as they are.
    Subdivision edges inherit the original edge's weight, so the raw
    objective of the new pair equals the old one exactly (up to 1e-9).
    """
    taken = set(g.nodes)
    nodes: list[str] = list(g.nodes)
    new_nodes: list[str] = []
    edges: list[tuple[str, str, float]] = []
    origin: list[int] = []
    points: dict[str, np.ndarray] = {v: emb.points[v] for v in g.nodes}
    counter = 0
    for e, (u, v, w) in enumerate(g.edges):
        x, y = emb.points[u], emb.points[v]
        if int(np.sum(np.abs(x - y) > _ALIGN_TOL)) <= 2:
            edges.append((u, v, w))
            origin.append(e)
            continue
        route = _route(x, y)
        prev = u
        for k in range(1, len(route) - 1):
            while True:
                name = f"_ax{counter}"
                counter += 1
                if name not in taken:
                    break
            taken.add(name)
            nodes.append(name)
            new_nodes.append(name)
            points[name] = route[k]
            edges.append((prev, name, w))
            origin.append(e)
            prev = name
        edges.append((prev, v, w))
        origin.append(e)
    new_graph = Graph(tuple(nodes), tuple(edges))
    new_emb = SimplexEmbedding(emb.dimension, points)
    old_len = embedding_length(g, emb)
    new_len = embedding_length(new_graph, new_emb)
    if abs(old_len - new_len) > 1e-7 * max(1.0, old_len):
        raise SolverFailureError("axis alignment changed the embedding length")
    return AlignedEmbedding(new_graph, new_emb, tuple(origin), tuple(new_nodes))


def align_instance(
    inst: LabelingInstance, emb: SimplexEmbedding
) -> tuple[LabelingInstance, AlignedEmbedding]:
    """Axis-align and extend the label lists to the subdivision nodes.

    A subdivision node allows the labels its point is supported on, plus the
    lifted label in lifted mode (subdivision nodes are never terminals).
    """
    aligned = axis_align(inst.graph, emb)
    labels = dict(inst.labels)
    for name in aligned.new_nodes:
        support = {int(l) for l in np.nonzero(aligned.embedding.points[name] > 0.0)[0]}
        if inst.mode == LIFTED:
            support.add(inst.free_label)
        elif inst.mode == MULTIWAY:
            support = set(range(inst.label_count))
        labels[name] = frozenset(support)
    new_inst = LabelingInstance(
        aligned.graph, inst.label_count, labels, inst.terminals, inst.mode
    )
    return new_inst, aligned


def solve_relaxation(
    inst: LabelingInstance,
) -> tuple[SimplexEmbedding, float, float]:
    """Build, solve, and extract: returns (embedding, raw, cut-comparable)."""
    program, index = build_lift_lp(inst)
    sol = solve_lp(program)
    if sol.status != "optimal":
        raise SolverFailureError(f"relaxation LP came back {sol.status}")
    raw, half = relaxation_values(sol)
    emb = extract_embedding(inst, index, sol)
    return emb, raw, half
