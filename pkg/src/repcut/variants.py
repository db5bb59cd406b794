"""Terminal-set cut variants: instances, feasibility, validation, solvers.

A variant instance is a graph plus q candidate sets T_1..T_q (0-indexed
internally) and a demand pattern saying which chosen representatives must
end up in different components once the cut edges are removed:

* all-to-all:       every T_i is separated from every T_j wholesale;
* single-to-all:    a chosen t_i in T_i is separated from all of T_j;
* single-to-single: chosen t_i, t_j are pairwise separated (a transversal);
* fixed-to-single:  a fixed node s is separated from a chosen t_j per set;
* some-to-single:   per ordered pair, a chosen t_i^j is separated from t_j;
* some-to-some:     per unordered pair, t_i^j and t_j^i are separated;
* some-to-all:      per ordered pair, t_i^j is separated from all of T_j.

Representatives are part of the solution, not the instance.  Every solver
returns a CutSolution whose certificate lists, demand by demand, the
component ids that prove separation, and every solver validates its own
output before returning it.

Solvers
-------
solve_single_to_single_tree    exact greedy on trees (good-cut exchange);
solve_single_to_single_gh      (2 - 2/q)-approximation via a Gomory-Hu tree;
solve_all_to_all               contract sets, then relaxation + rounding;
solve_single_to_all_2approx    union of per-set isolating cuts;
solve_fixed_to_single_fixed_q  exact for constant q via isolating cuts;
solve_*_fixed_q                enumerate representative guesses, then solve
                               a lifted relaxation or a multicut subproblem.

The fixed-q solvers enumerate representative tuples, so their cost is
exponential in q; they refuse instances beyond an explicit cap rather than
silently stalling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._partitions import set_partitions
from .errors import (
    CapExceededError,
    InfeasibleInstanceError,
    InstanceValidationError,
    PreconditionError,
    SolverFailureError,
)
from .flow import max_flow_dense
from .graph import (
    Cut,
    Graph,
    Partition,
    boundary,
    components,
    contract,
    cut_weight,
    dichromatic_edges,
    expand_cut,
)
from .mincut import gomory_hu, isolating_cut
from .multiway import solve_lifted_cut, solve_multiway_cut
from .relax import LIFTED, LabelingInstance
from .rounding import RoundingParams

ALL_TO_ALL = "all-to-all"
SINGLE_TO_ALL = "single-to-all"
SINGLE_TO_SINGLE = "single-to-single"
FIXED_TO_SINGLE = "fixed-to-single"
SOME_TO_SINGLE = "some-to-single"
SOME_TO_SOME = "some-to-some"
SOME_TO_ALL = "some-to-all"

VARIANTS = (
    ALL_TO_ALL,
    SINGLE_TO_ALL,
    SINGLE_TO_SINGLE,
    FIXED_TO_SINGLE,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    SOME_TO_ALL,
)

FIXED_Q_CAP = 4
SOME_TO_ALL_CAP = 3
MULTICUT_TERMINAL_CAP = 12

_WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class CandidateFamily:
    """The candidate sets T_1..T_q, stored 0-indexed."""

    sets: tuple[frozenset[str], ...]

    @staticmethod
    def build(sets: Iterable[Iterable[str]]) -> "CandidateFamily":
        return CandidateFamily(tuple(frozenset(s) for s in sets))

    @property
    def q(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class VariantInstance:
    variant: str
    graph: Graph
    family: CandidateFamily
    fixed: str | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise InstanceValidationError(f"unknown variant {self.variant!r}")
        if self.family.q == 0:
            raise InstanceValidationError("need at least one candidate set")
        for i, t in enumerate(self.family.sets):
            if not t:
                raise InstanceValidationError(f"candidate set {i} is empty")
            self.graph.check_nodes(t)
        if self.variant == FIXED_TO_SINGLE:
            if self.fixed is None:
                raise InstanceValidationError("fixed-to-single needs a fixed node")
            self.graph.check_nodes([self.fixed])
        elif self.fixed is not None:
            raise InstanceValidationError(
                f"variant {self.variant!r} does not take a fixed node"
            )

    @staticmethod
    def build(
        variant: str,
        graph: Graph,
        sets: Iterable[Iterable[str]],
        fixed: str | None = None,
    ) -> "VariantInstance":
        return VariantInstance(variant, graph, CandidateFamily.build(sets), fixed)

    @property
    def q(self) -> int:
        return self.family.q


@dataclass(frozen=True)
class RepresentativeChoice:
    """Chosen representatives: per-set singles and/or per-ordered-pair reps.

    Which parts must be present depends on the variant; all-to-all needs
    neither.  pairs[(i, j)] is the set-i representative aimed at set j.
    """

    single: Mapping[int, str] | None = None
    pairs: Mapping[tuple[int, int], str] | None = None

    def single_map(self) -> Mapping[int, str]:
        return self.single or {}

    def pairs_map(self) -> Mapping[tuple[int, int], str]:
        return self.pairs or {}


@dataclass(frozen=True)
class CutSolution:
    """A cut, the representatives it serves, and a separation certificate.

    Certificate entries name the demand and the component ids (under the
    canonical component numbering of graph minus cut) that witness it.
    """

    cut: Cut
    reps: RepresentativeChoice
    weight: float
    certificate: tuple[tuple, ...] = ()


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: RepresentativeChoice | None = None
    violation: tuple | None = None


def _ordered_pairs(q: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(q) for j in range(q) if i != j]


# ---------------------------------------------------------------------------
# feasibility


def _transversal(sets: Sequence[frozenset[str]]) -> dict[int, str] | None:
    """Deterministic maximum bipartite matching set -> distinct node.

    Augmenting-path search in set-index order, candidate nodes in
    lexicographic order; returns None unless every set is matched.
    """
    matched: dict[str, int] = {}

    def try_assign(i: int, banned: set[str]) -> bool:
        for v in sorted(sets[i]):
            if v in banned:
                continue
            banned.add(v)
            if v not in matched or try_assign(matched[v], banned):
                matched[v] = i
                return True
        return False

    for i in range(len(sets)):
        if not try_assign(i, set()):
            return None
    return {i: v for v, i in matched.items()}


def check_feasibility(inst: VariantInstance) -> FeasibilityReport:
    """Decide whether any cut plus representative choice can satisfy inst.

    On the feasible side the witness representatives work with the cut that
    removes every edge (all components singletons), which is the easiest cut
    to satisfy; infeasibility cites the structural violation found.
    """
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    if v == ALL_TO_ALL:
        for i in range(q):
            for j in range(i + 1, q):
                if sets[i] & sets[j]:
                    return FeasibilityReport(False, None, ("overlap", i, j))
        return FeasibilityReport(True, RepresentativeChoice())
    if v == SINGLE_TO_ALL:
        single: dict[int, str] = {}
        for i in range(q):
            pool = sets[i].difference(*[sets[j] for j in range(q) if j != i])
            if not pool:
                return FeasibilityReport(False, None, ("covered", i))
            single[i] = min(pool)
        return FeasibilityReport(True, RepresentativeChoice(single=single))
    if v == SINGLE_TO_SINGLE:
        match = _transversal(sets)
        if match is None:
            return FeasibilityReport(False, None, ("no-transversal",))
        return FeasibilityReport(True, RepresentativeChoice(single=match))
    if v == FIXED_TO_SINGLE:
        single = {}
        for j in range(q):
            pool = sets[j] - {inst.fixed}
            if not pool:
                return FeasibilityReport(False, None, ("set-is-fixed", j))
            single[j] = min(pool)
        return FeasibilityReport(True, RepresentativeChoice(single=single))
    if v == SOME_TO_SINGLE:
        single = {}
        for j in range(q):
            # t_j is usable unless some other set pins it as a singleton
            pool = sorted(
                t
                for t in sets[j]
                if not any(i != j and sets[i] == {t} for i in range(q))
            )
            if not pool:
                return FeasibilityReport(False, None, ("pinned-set", j))
            single[j] = pool[0]
        pairs = {
            (i, j): min(sets[i] - {single[j]}) for i, j in _ordered_pairs(q)
        }
        return FeasibilityReport(True, RepresentativeChoice(single, pairs))
    if v == SOME_TO_SOME:
        for i in range(q):
            for j in range(i + 1, q):
                if len(sets[i]) == 1 and sets[i] == sets[j]:
                    return FeasibilityReport(False, None, ("equal-singletons", i, j))
        pairs = {}
        for i in range(q):
            for j in range(i + 1, q):
                a, b = min(sets[i]), min(sets[j])
                if a == b:
                    if len(sets[i]) > 1:
                        a = sorted(sets[i])[1]
                    else:
                        b = sorted(sets[j])[1]
                pairs[(i, j)] = a
                pairs[(j, i)] = b
        return FeasibilityReport(True, RepresentativeChoice(pairs=pairs))
    # some-to-all
    pairs = {}
    for i, j in _ordered_pairs(q):
        pool = sets[i] - sets[j]
        if not pool:
            return FeasibilityReport(False, None, ("subset", i, j))
        pairs[(i, j)] = min(pool)
    return FeasibilityReport(True, RepresentativeChoice(pairs=pairs))


def _require_feasible(inst: VariantInstance) -> FeasibilityReport:
    rep = check_feasibility(inst)
    if not rep.feasible:
        raise InfeasibleInstanceError(
            f"instance admits no solution: {rep.violation}", witness=rep.violation
        )
    return rep


# ---------------------------------------------------------------------------
# demand checking, certificates, validation


def _check_reps_shape(inst: VariantInstance, reps: RepresentativeChoice) -> str | None:
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    single = dict(reps.single_map())
    pairs = dict(reps.pairs_map())
    need_single = v in (SINGLE_TO_ALL, SINGLE_TO_SINGLE, FIXED_TO_SINGLE, SOME_TO_SINGLE)
    need_pairs = v in (SOME_TO_SINGLE, SOME_TO_SOME, SOME_TO_ALL)
    if need_single:
        if sorted(single) != list(range(q)):
            return f"variant {v} needs one single representative per set"
        for i, t in single.items():
            if t not in sets[i]:
                return f"representative {t!r} is not in set {i}"
    elif single:
        return f"variant {v} takes no single representatives"
    if need_pairs:
        if sorted(pairs) != _ordered_pairs(q):
            return f"variant {v} needs one representative per ordered set pair"
        for (i, j), t in pairs.items():
            if t not in sets[i]:
                return f"pair representative {t!r} for ({i},{j}) is not in set {i}"
    elif pairs:
        return f"variant {v} takes no pair representatives"
    return None


def _demand_failures(
    inst: VariantInstance, part: Partition, reps: RepresentativeChoice
) -> str | None:
    """First violated demand, or None if all demands hold under part."""
    a = part.assignment
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    single = reps.single_map()
    pairs = reps.pairs_map()
    if v == ALL_TO_ALL:
        comp_sets = [{a[x] for x in t} for t in sets]
        for i in range(q):
            for j in range(i + 1, q):
                shared = comp_sets[i] & comp_sets[j]
                if shared:
                    return f"sets {i} and {j} share component {min(shared)}"
        return None
    if v == SINGLE_TO_ALL:
        for i in range(q):
            for j in range(q):
                if j == i:
                    continue
                hit = sorted(x for x in sets[j] if a[x] == a[single[i]])
                if hit:
                    return f"t_{i}={single[i]!r} meets set {j} at {hit[0]!r}"
        return None
    if v == SINGLE_TO_SINGLE:
        for i in range(q):
            for j in range(i + 1, q):
                if a[single[i]] == a[single[j]]:
                    return f"t_{i}={single[i]!r} and t_{j}={single[j]!r} share a component"
        return None
    if v == FIXED_TO_SINGLE:
        s = inst.fixed
        assert s is not None
        for j in range(q):
            if a[single[j]] == a[s]:
                return f"t_{j}={single[j]!r} shares a component with fixed {s!r}"
        return None
    if v == SOME_TO_SINGLE:
        for i, j in _ordered_pairs(q):
            if a[pairs[(i, j)]] == a[single[j]]:
                return f"t_{i}^{j}={pairs[(i, j)]!r} shares a component with t_{j}={single[j]!r}"
        return None
    if v == SOME_TO_SOME:
        for i in range(q):
            for j in range(i + 1, q):
                if a[pairs[(i, j)]] == a[pairs[(j, i)]]:
                    return (
                        f"t_{i}^{j}={pairs[(i, j)]!r} and t_{j}^{i}={pairs[(j, i)]!r}"
                        " share a component"
                    )
        return None
    # some-to-all
    for i, j in _ordered_pairs(q):
        hit = sorted(x for x in sets[j] if a[x] == a[pairs[(i, j)]])
        if hit:
            return f"t_{i}^{j}={pairs[(i, j)]!r} meets set {j} at {hit[0]!r}"
    return None


def _certificate(
    inst: VariantInstance, part: Partition, reps: RepresentativeChoice
) -> tuple[tuple, ...]:
    a = part.assignment
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    single = reps.single_map()
    pairs = reps.pairs_map()

    def comp_ids(t: frozenset[str]) -> tuple[int, ...]:
        return tuple(sorted({a[x] for x in t}))

    out: list[tuple] = []
    if v == ALL_TO_ALL:
        for i in range(q):
            for j in range(i + 1, q):
                out.append(("sets", i, j, comp_ids(sets[i]), comp_ids(sets[j])))
    elif v == SINGLE_TO_ALL:
        for i, j in _ordered_pairs(q):
            out.append(("rep-vs-set", i, j, a[single[i]], comp_ids(sets[j])))
    elif v == SINGLE_TO_SINGLE:
        for i in range(q):
            for j in range(i + 1, q):
                out.append(("rep-pair", i, j, a[single[i]], a[single[j]]))
    elif v == FIXED_TO_SINGLE:
        s = inst.fixed
        assert s is not None
        for j in range(q):
            out.append(("fixed-vs-rep", j, a[s], a[single[j]]))
    elif v == SOME_TO_SINGLE:
        for i, j in _ordered_pairs(q):
            out.append(("pair-vs-rep", i, j, a[pairs[(i, j)]], a[single[j]]))
    elif v == SOME_TO_SOME:
        for i in range(q):
            for j in range(i + 1, q):
                out.append(("pair-pair", i, j, a[pairs[(i, j)]], a[pairs[(j, i)]]))
    else:
        for i, j in _ordered_pairs(q):
            out.append(("pair-vs-set", i, j, a[pairs[(i, j)]], comp_ids(sets[j])))
    return tuple(out)


def validate_solution(inst: VariantInstance, sol: CutSolution) -> Verdict:
    """Check a solution from scratch: cut indices, weight, reps, demands.

    The certificate is advisory; validation recomputes components and demand
    separation directly.
    """
    try:
        cut = inst.graph.check_cut(sol.cut)
    except Exception as exc:  # noqa: BLE001 - report, don't raise
        return Verdict(False, str(exc))
    w = cut_weight(inst.graph, cut)
    if abs(w - sol.weight) > _WEIGHT_TOL * max(1.0, abs(w)):
        return Verdict(False, f"stated weight {sol.weight} != cut weight {w}")
    shape = _check_reps_shape(inst, sol.reps)
    if shape is not None:
        return Verdict(False, shape)
    part = components(inst.graph, cut)
    failure = _demand_failures(inst, part, sol.reps)
    if failure is not None:
        return Verdict(False, failure)
    return Verdict(True)


def _finish(inst: VariantInstance, cut: Cut, reps: RepresentativeChoice) -> CutSolution:
    """Assemble, certify, and self-validate a solver's output."""
    part = components(inst.graph, cut)
    sol = CutSolution(
        cut=cut,
        reps=reps,
        weight=cut_weight(inst.graph, cut),
        certificate=_certificate(inst, part, reps),
    )
    verdict = validate_solution(inst, sol)
    if not verdict.ok:
        raise SolverFailureError(f"solver produced an invalid solution: {verdict.reason}")
    return sol


# ---------------------------------------------------------------------------
# good cuts on trees (gammoid independence via unit-capacity flow)


def _orient_tree(g: Graph) -> tuple[str, dict[str, tuple[int, str]]]:
    """Root at the lex-smallest node; parent[v] = (edge index, parent id)."""
    if g.edge_count != g.node_count - 1:
        raise PreconditionError("graph is not a tree (edge count != n - 1)")
    root = min(g.nodes)
    idx = g.index
    parent: dict[str, tuple[int, str]] = {}
    seen = {idx[root]}
    queue = [idx[root]]
    while queue:
        cur = queue.pop(0)
        for e, other in g.adjacency[cur]:
            if other not in seen:
                seen.add(other)
                parent[g.nodes[other]] = (e, g.nodes[cur])
                queue.append(other)
    if len(seen) != g.node_count:
        raise PreconditionError("graph is not a tree (disconnected)")
    return root, parent


def _edge_child(g: Graph, parent: Mapping[str, tuple[int, str]]) -> dict[int, str]:
    return {e: v for v, (e, _) in parent.items()}


def _gammoid_paths(
    g: Graph,
    sets: Sequence[frozenset[str]],
    targets: frozenset[str],
    root: str,
    parent: Mapping[str, tuple[int, str]],
) -> dict[int, tuple[str, str]] | None:
    """Vertex-disjoint source->target path system in the rooted tree.

    Builds the unit-capacity network (split nodes, one source per candidate
    set, sinks at `targets` plus the root) and asks for |targets| + 1 units.
    Returns {set index: (first graph node, reached target)} per saturated
    source, or None when the system does not exist.
    """
    q = len(sets)
    n = g.node_count
    size = 2 + q + 2 * n
    src, snk = 0, 1
    idx = g.index

    def n_in(v: str) -> int:
        return 2 + q + 2 * idx[v]

    def n_out(v: str) -> int:
        return 3 + q + 2 * idx[v]

    cap = np.zeros((size, size), dtype=np.float64)
    for i, t in enumerate(sets):
        cap[src, 2 + i] = 1.0
        for v in t:
            cap[2 + i, n_in(v)] = 1.0
    for v in g.nodes:
        cap[n_in(v), n_out(v)] = 1.0
        if v != root:
            cap[n_out(v), n_in(parent[v][1])] = 1.0
    for z in targets | {root}:
        cap[n_out(z), snk] = 1.0

    value, flow = max_flow_dense(cap, src, snk)
    want = len(targets) + 1
    if abs(value - want) > 1e-6:
        return None
    # unit capacities on an acyclic network: flow entries are exactly 0 or 1
    f = flow.copy()
    paths: dict[int, tuple[str, str]] = {}
    for i in range(q):
        if f[src, 2 + i] < 0.5:
            continue
        cur = 2 + i
        first: str | None = None
        while cur != snk:
            nxt = int(np.nonzero(f[cur] > 0.5)[0][0])
            f[cur, nxt] -= 1.0
            if first is None:
                first = g.nodes[(nxt - 2 - q) // 2]
            if nxt == snk:
                paths[i] = (first, g.nodes[(cur - 3 - q) // 2])
            cur = nxt
    return paths


def is_good_cut(tree: Graph, cut: Iterable[int], family: CandidateFamily) -> bool:
    """Whether a tree cut admits the full disjoint-path system.

    Root the tree at its lex-smallest node and collect the child endpoint of
    every cut edge; the cut is good when those endpoints plus the root can be
    reached from distinct candidate sets by vertex-disjoint paths that only
    walk toward the root.  Good cuts are exactly the cuts that are inclusion-
    minimal for some representative choice, so greedy exchange over them is
    safe.  The empty cut is good whenever the family is nonempty.
    """
    c = tree.check_cut(cut)
    if family.q == 0:
        raise PreconditionError("family must have at least one set")
    for i, t in enumerate(family.sets):
        if not t:
            raise PreconditionError(f"candidate set {i} is empty")
        tree.check_nodes(t)
    root, parent = _orient_tree(tree)
    child = _edge_child(tree, parent)
    targets = frozenset(child[e] for e in c)
    return _gammoid_paths(tree, family.sets, targets, root, parent) is not None


def _greedy_good_cut(
    tree: Graph, sets: Sequence[frozenset[str]]
) -> tuple[list[int], dict[int, tuple[str, str]]]:
    """Cheapest-edge-first greedy over goodness-preserving extensions.

    Adds q - 1 edges, each time the cheapest edge (ties by declaration
    index) whose child endpoint keeps the target system linkable.  Returns
    the chosen edge indices and the final path system, which pins one
    representative per set.
    """
    q = len(sets)
    root, parent = _orient_tree(tree)
    child = _edge_child(tree, parent)
    order = sorted(range(tree.edge_count), key=lambda e: (tree.edges[e][2], e))
    chosen: list[int] = []
    targets: frozenset[str] = frozenset()
    for _ in range(q - 1):
        pick = None
        for e in order:
            if e in chosen:
                continue
            cand = targets | {child[e]}
            if _gammoid_paths(tree, sets, cand, root, parent) is not None:
                pick = e
                break
        if pick is None:
            raise SolverFailureError("no edge extends the good cut")
        chosen.append(pick)
        targets = targets | {child[pick]}
    paths = _gammoid_paths(tree, sets, targets, root, parent)
    if paths is None or sorted(paths) != list(range(q)):
        raise SolverFailureError("final good cut lost its path system")
    return chosen, paths


def solve_single_to_single_tree(inst: VariantInstance) -> CutSolution:
    """Exact single-to-single solver for tree graphs.

    Good cuts of a rooted tree form the independent sets of a gammoid, so
    picking the q - 1 cheapest goodness-preserving edges is optimal; the
    path system of the final cut hands back the representatives.
    """
    _expect_variant(inst, SINGLE_TO_SINGLE)
    _require_feasible(inst)
    chosen, paths = _greedy_good_cut(inst.graph, inst.family.sets)
    reps = RepresentativeChoice(single={i: paths[i][0] for i in range(inst.q)})
    return _finish(inst, frozenset(chosen), reps)


def solve_single_to_single_gh(inst: VariantInstance) -> CutSolution:
    """(2 - 2/q)-approximate single-to-single solver for general graphs.

    Runs the exact tree greedy on the Gomory-Hu tree, then takes the union
    of the minimum-cut splits behind the selected tree edges.  Each split's
    boundary weight equals its tree edge weight, so the union costs at most
    the tree solution, which underestimates nothing by more than 2 - 2/q.
    """
    _expect_variant(inst, SINGLE_TO_SINGLE)
    _require_feasible(inst)
    g = inst.graph
    tree = gomory_hu(g).as_graph()
    chosen, paths = _greedy_good_cut(tree, inst.family.sets)
    union: set[int] = set()
    for e in chosen:
        part = components(tree, [e])
        side = frozenset(
            v for v in tree.nodes if part.assignment[v] == part.assignment[tree.edges[e][0]]
        )
        union |= boundary(g, side)
    reps = RepresentativeChoice(single={i: paths[i][0] for i in range(inst.q)})
    return _finish(inst, frozenset(union), reps)


# ---------------------------------------------------------------------------
# all-to-all and single-to-all


def _expect_variant(inst: VariantInstance, variant: str) -> None:
    if inst.variant != variant:
        raise PreconditionError(f"solver expects a {variant} instance, got {inst.variant}")


def solve_all_to_all(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    threads: int = 1,
) -> CutSolution:
    """Contract each candidate set and solve the resulting multiway cut."""
    _expect_variant(inst, ALL_TO_ALL)
    _require_feasible(inst)
    if inst.q == 1:
        return _finish(inst, frozenset(), RepresentativeChoice())
    res = contract(inst.graph, inst.family.sets)
    terminals = tuple(min(t) for t in inst.family.sets)
    inner = solve_multiway_cut(res.graph, terminals, params, samples, threads)
    return _finish(inst, expand_cut(res, inner.cut), RepresentativeChoice())


def solve_single_to_all_2approx(
    inst: VariantInstance, mode: str = "keep-all"
) -> CutSolution:
    """2-approximation by unioning one isolating cut per candidate set.

    For each set i, take the cheapest minimum cut isolating some exclusive
    candidate t_i from every other set's members.  mode "keep-all" unions
    all q cuts; "drop-largest" omits the most expensive one (ties broken
    toward the smallest set index) but falls back to the full union when
    the thinner cut stops satisfying the demands, which can happen because
    dropped-cut edges may have been doing double duty.
    """
    _expect_variant(inst, SINGLE_TO_ALL)
    if mode not in ("keep-all", "drop-largest"):
        raise PreconditionError(f"unknown mode {mode!r}")
    _require_feasible(inst)
    g = inst.graph
    q = inst.q
    if q == 1:
        rep = min(inst.family.sets[0])
        return _finish(inst, frozenset(), RepresentativeChoice(single={0: rep}))
    cuts: list[Cut] = []
    reps: dict[int, str] = {}
    weights: list[float] = []
    for i in range(q):
        others = frozenset().union(*[inst.family.sets[j] for j in range(q) if j != i])
        best: tuple[float, str, Cut] | None = None
        for v in sorted(inst.family.sets[i] - others):
            res = isolating_cut(g, v, others)
            if best is None or res.weight < best[0] - _WEIGHT_TOL:
                best = (res.weight, v, res.cut)
        assert best is not None  # feasibility guarantees an exclusive candidate
        weights.append(best[0])
        reps[i] = best[1]
        cuts.append(best[2])
    rep_choice = RepresentativeChoice(single=reps)
    full_union = frozenset().union(*cuts)
    if mode == "drop-largest":
        drop = max(range(q), key=lambda i: (weights[i], -i))
        thin = frozenset().union(*[cuts[i] for i in range(q) if i != drop])
        part = components(g, thin)
        if _demand_failures(inst, part, rep_choice) is None:
            return _finish(inst, thin, rep_choice)
    return _finish(inst, full_union, rep_choice)


# ---------------------------------------------------------------------------
# fixed-q solvers


def _check_cap(q: int, cap: int, what: str) -> None:
    if q > cap:
        raise CapExceededError(
            f"{what} enumerates representative tuples and is capped at q <= {cap}; "
            f"got q = {q} (pass a larger cap to override)"
        )


def solve_fixed_to_single_fixed_q(
    inst: VariantInstance, cap: int = FIXED_Q_CAP
) -> CutSolution:
    """Exact fixed-to-single solver: best isolating cut over rep tuples.

    Any optimal solution's component of the fixed node avoids some
    representative tuple, and the minimum cut isolating the fixed node from
    that tuple can only be lighter, so scanning all tuples is exact.
    """
    _expect_variant(inst, FIXED_TO_SINGLE)
    _check_cap(inst.q, cap, "solve_fixed_to_single_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    s = inst.fixed
    assert s is not None
    pools = [sorted(t - {s}) for t in inst.family.sets]
    best: tuple[float, tuple[str, ...], Cut] | None = None
    seen: set[frozenset[str]] = set()
    for combo in itertools.product(*pools):
        key = frozenset(combo)
        if key in seen:
            continue
        seen.add(key)
        res = isolating_cut(g, s, key)
        if best is None or res.weight < best[0] - _WEIGHT_TOL:
            best = (res.weight, combo, res.cut)
    assert best is not None
    reps = RepresentativeChoice(single={j: best[1][j] for j in range(inst.q)})
    return _finish(inst, best[2], reps)


def solve_single_to_single_fixed_q(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = FIXED_Q_CAP,
    threads: int = 1,
) -> CutSolution:
    """Single-to-single via multiway cut on every transversal tuple."""
    _expect_variant(inst, SINGLE_TO_SINGLE)
    _check_cap(inst.q, cap, "solve_single_to_single_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    if inst.q == 1:
        rep = min(inst.family.sets[0])
        return _finish(inst, frozenset(), RepresentativeChoice(single={0: rep}))
    best: tuple[float, tuple[str, ...], Cut] | None = None
    for combo in itertools.product(*[sorted(t) for t in inst.family.sets]):
        if len(set(combo)) != len(combo):
            continue
        inner = solve_multiway_cut(g, combo, params, samples, threads)
        if best is None or inner.weight < best[0] - _WEIGHT_TOL:
            best = (inner.weight, combo, inner.cut)
    assert best is not None  # feasibility provided a transversal
    reps = RepresentativeChoice(single={i: best[1][i] for i in range(inst.q)})
    return _finish(inst, best[2], reps)


def solve_single_to_all_fixed_q(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = FIXED_Q_CAP,
    threads: int = 1,
) -> CutSolution:
    """Single-to-all via a lifted relaxation per representative tuple.

    Candidates belonging to other sets cannot serve as t_i (they would sit
    in a forbidden component), so tuples touching them are skipped.  The
    label lists encode the demands: nodes in several sets may only take the
    lifted label, nodes in exactly set j may take j or the lifted label.
    """
    _expect_variant(inst, SINGLE_TO_ALL)
    _check_cap(inst.q, cap, "solve_single_to_all_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    q = inst.q
    if q == 1:
        rep = min(inst.family.sets[0])
        return _finish(inst, frozenset(), RepresentativeChoice(single={0: rep}))
    sets = inst.family.sets
    pools = [
        sorted(sets[i].difference(*[sets[j] for j in range(q) if j != i]))
        for i in range(q)
    ]
    membership: dict[str, list[int]] = {
        v: [j for j in range(q) if v in sets[j]] for v in g.nodes
    }
    full = frozenset(range(q + 1))
    best: tuple[float, tuple[str, ...], Cut] | None = None
    for combo in itertools.product(*pools):
        labels: dict[str, frozenset[int]] = {}
        for v in g.nodes:
            owners = membership[v]
            if len(owners) >= 2:
                labels[v] = frozenset([q])
            elif len(owners) == 1:
                labels[v] = frozenset([owners[0], q])
            else:
                labels[v] = full
        for i, t in enumerate(combo):
            labels[t] = frozenset([i])
        li = LabelingInstance(g, q + 1, labels, tuple(combo), LIFTED)
        inner = solve_lifted_cut(li, params, samples, threads)
        if best is None or inner.weight < best[0] - _WEIGHT_TOL:
            best = (inner.weight, combo, inner.cut)
    assert best is not None
    reps = RepresentativeChoice(single={i: best[1][i] for i in range(q)})
    return _finish(inst, best[2], reps)


def solve_multicut_fixed_terminals(
    g: Graph,
    demand_pairs: Iterable[tuple[str, str]],
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = MULTICUT_TERMINAL_CAP,
    threads: int = 1,
    _memo: dict | None = None,
) -> tuple[Cut, float]:
    """Multicut whose demand endpoints all come from a small terminal pool.

    Enumerates the partitions of the endpoint set that split every demand,
    contracts each partition's classes, and solves the multiway cut among
    the class supernodes; the best expanded cut wins.  Exponential in the
    number of distinct endpoints, hence the cap.
    """
    pairs = []
    for u, v in demand_pairs:
        g.check_nodes([u, v])
        if u == v:
            raise PreconditionError(f"demand pair ({u!r}, {v!r}) cannot be separated")
        pairs.append((min(u, v), max(u, v)))
    pairs = sorted(set(pairs))
    if not pairs:
        return frozenset(), 0.0
    terminals = sorted({x for p in pairs for x in p})
    if len(terminals) > cap:
        raise CapExceededError(
            f"multicut enumeration is capped at {cap} distinct endpoints; "
            f"got {len(terminals)} (pass a larger cap to override)"
        )
    memo = _memo if _memo is not None else {}
    best: tuple[float, Cut] | None = None
    for blocks in set_partitions(terminals):
        if len(blocks) < 2:
            continue
        cls = {v: bi for bi, block in enumerate(blocks) for v in block}
        if any(cls[u] == cls[v] for u, v in pairs):
            continue
        key = tuple(blocks)
        if key not in memo:
            res = contract(g, blocks)
            term = tuple(min(b) for b in blocks)
            inner = solve_multiway_cut(res.graph, term, params, samples, threads)
            memo[key] = (expand_cut(res, inner.cut), inner.weight)
        cut, weight = memo[key]
        if best is None or weight < best[0] - _WEIGHT_TOL:
            best = (weight, cut)
    assert best is not None  # singleton partition always splits all demands
    return best[1], best[0]


def solve_some_to_single_fixed_q(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = FIXED_Q_CAP,
    threads: int = 1,
) -> CutSolution:
    """Some-to-single via multicut over all representative guesses.

    Guesses the per-set single representative t_j and, per ordered pair,
    the attacker t_i^j (any candidate other than t_j); identical demand
    sets are solved once.
    """
    _expect_variant(inst, SOME_TO_SINGLE)
    _check_cap(inst.q, cap, "solve_some_to_single_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    q = inst.q
    sets = inst.family.sets
    if q == 1:
        reps = RepresentativeChoice(single={0: min(sets[0])}, pairs={})
        return _finish(inst, frozenset(), reps)
    slots = _ordered_pairs(q)
    seen: set[frozenset[tuple[str, str]]] = set()
    memo: dict = {}
    best: tuple[float, RepresentativeChoice, Cut] | None = None
    for singles in itertools.product(*[sorted(t) for t in sets]):
        slot_pools = []
        ok = True
        for i, j in slots:
            pool = sorted(sets[i] - {singles[j]})
            if not pool:
                ok = False
                break
            slot_pools.append(pool)
        if not ok:
            continue
        for choice in itertools.product(*slot_pools):
            demands = frozenset(
                (min(t, singles[j]), max(t, singles[j]))
                for (i, j), t in zip(slots, choice)
            )
            if demands in seen:
                continue
            seen.add(demands)
            cut, weight = solve_multicut_fixed_terminals(
                g, demands, params, samples, MULTICUT_TERMINAL_CAP, threads, memo
            )
            if best is None or weight < best[0] - _WEIGHT_TOL:
                reps = RepresentativeChoice(
                    single={j: singles[j] for j in range(q)},
                    pairs={sl: t for sl, t in zip(slots, choice)},
                )
                best = (weight, reps, cut)
    assert best is not None
    return _finish(inst, best[2], best[1])


def solve_some_to_some_fixed_q(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = FIXED_Q_CAP,
    threads: int = 1,
) -> CutSolution:
    """Some-to-some via multicut over per-pair representative guesses."""
    _expect_variant(inst, SOME_TO_SOME)
    _check_cap(inst.q, cap, "solve_some_to_some_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    q = inst.q
    sets = inst.family.sets
    if q == 1:
        return _finish(inst, frozenset(), RepresentativeChoice(pairs={}))
    duels = [(i, j) for i in range(q) for j in range(i + 1, q)]
    duel_pools = []
    for i, j in duels:
        pool = [
            (a, b)
            for a in sorted(sets[i])
            for b in sorted(sets[j])
            if a != b
        ]
        duel_pools.append(pool)
    seen: set[frozenset[tuple[str, str]]] = set()
    memo: dict = {}
    best: tuple[float, RepresentativeChoice, Cut] | None = None
    for choice in itertools.product(*duel_pools):
        demands = frozenset((min(a, b), max(a, b)) for a, b in choice)
        if demands in seen:
            continue
        seen.add(demands)
        cut, weight = solve_multicut_fixed_terminals(
            g, demands, params, samples, MULTICUT_TERMINAL_CAP, threads, memo
        )
        if best is None or weight < best[0] - _WEIGHT_TOL:
            pairs: dict[tuple[int, int], str] = {}
            for (i, j), (a, b) in zip(duels, choice):
                pairs[(i, j)] = a
                pairs[(j, i)] = b
            best = (weight, RepresentativeChoice(pairs=pairs), cut)
    assert best is not None  # feasibility rules out all-equal singleton duels
    return _finish(inst, best[2], best[1])


def solve_some_to_all_fixed_q(
    inst: VariantInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    cap: int = SOME_TO_ALL_CAP,
    threads: int = 1,
) -> CutSolution:
    """Some-to-all via lifted relaxations over rep tuples and groupings.

    Guesses one representative per ordered pair (never a member of the
    target set), then every way of grouping the distinct representatives
    into components.  A grouping is consistent when no class holds both a
    rep t_i^j and any rep of the attacked set j.  Classes are contracted to
    terminals of a lifted instance whose label lists forbid members of set
    j from joining any class that attacks j.
    """
    _expect_variant(inst, SOME_TO_ALL)
    _check_cap(inst.q, cap, "solve_some_to_all_fixed_q")
    _require_feasible(inst)
    g = inst.graph
    q = inst.q
    sets = inst.family.sets
    if q == 1:
        return _finish(inst, frozenset(), RepresentativeChoice(pairs={}))
    slots = _ordered_pairs(q)
    slot_pools = [sorted(sets[i] - sets[j]) for i, j in slots]
    membership: dict[str, list[int]] = {
        v: [j for j in range(q) if v in sets[j]] for v in g.nodes
    }
    memo: dict = {}
    best: tuple[float, RepresentativeChoice, Cut] | None = None
    for choice in itertools.product(*slot_pools):
        value_of = {sl: t for sl, t in zip(slots, choice)}
        rep_nodes = sorted(set(choice))
        for blocks in set_partitions(rep_nodes):
            q1 = len(blocks)
            if q1 < 2:
                continue
            cls = {v: bi for bi, block in enumerate(blocks) for v in block}
            # consistency: no class holds t_i^j together with any rep of set j
            attacked: list[set[int]] = [set() for _ in range(q1)]
            owners: list[set[int]] = [set() for _ in range(q1)]
            for (i, j), t in value_of.items():
                attacked[cls[t]].add(j)
                owners[cls[t]].add(i)
            if any(attacked[k] & owners[k] for k in range(q1)):
                continue
            exclude: list[set[int]] = [set() for _ in range(q)]
            for (i, j), t in value_of.items():
                exclude[j].add(cls[t])
            key = (
                tuple(blocks),
                tuple(tuple(sorted(exclude[j])) for j in range(q)),
            )
            if key not in memo:
                res = contract(g, blocks)
                terminals = tuple(min(b) for b in blocks)
                term_set = set(terminals)
                full = frozenset(range(q1 + 1))
                labels: dict[str, frozenset[int]] = {}
                for v in res.graph.nodes:
                    if v in term_set:
                        continue
                    banned: set[int] = set()
                    for j in membership.get(v, []):
                        banned |= exclude[j]
                    labels[v] = full - frozenset(banned)
                for k, t in enumerate(terminals):
                    labels[t] = frozenset([k])
                li = LabelingInstance(res.graph, q1 + 1, labels, terminals, LIFTED)
                inner = solve_lifted_cut(li, params, samples, threads)
                memo[key] = (expand_cut(res, inner.cut), inner.weight)
            cut, weight = memo[key]
            if best is None or weight < best[0] - _WEIGHT_TOL:
                reps = RepresentativeChoice(pairs=dict(value_of))
                best = (weight, reps, cut)
    assert best is not None  # feasibility gives nonempty pools; q1=|reps| split works
    return _finish(inst, best[2], best[1])
