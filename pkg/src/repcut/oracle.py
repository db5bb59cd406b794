"""Brute-force exact solvers for cross-checking the real algorithms.

Two independently written oracles solve the same variant instances:

* exact_solve enumerates set partitions of the nodes (restricted-growth
  order), cuts every inter-block edge, and tests demand satisfiability with
  per-component bitmasks plus a matching for the transversal variant;
* exact_solve_edge_subsets enumerates raw edge subsets in increasing weight
  and tests demands by looping over representative tuples directly.

They share no search logic, so agreement on 500 random instances is strong
evidence both are right.  Everything here is exponential and guarded by
OracleLimits; these functions exist for tests and the CLI oracle command,
not for production solving.

Correctness of the partition enumeration: for any cut C, the components of
g - C form a partition whose induced cut is a subset of C with the same
components, so restricting the search to induced cuts loses nothing; and
refining a partition to its connected components never breaks a demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._partitions import set_partitions
from .errors import BudgetExceededError, InfeasibleInstanceError, PreconditionError
from .graph import Cut, Graph, Partition, components, cut_weight
from .variants import (
    ALL_TO_ALL,
    FIXED_TO_SINGLE,
    SINGLE_TO_ALL,
    SINGLE_TO_SINGLE,
    SOME_TO_ALL,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    CutSolution,
    RepresentativeChoice,
    VariantInstance,
    _finish,
)

_TOL = 1e-12


@dataclass(frozen=True)
class OracleLimits:
    """Hard size caps; oracles refuse bigger inputs instead of stalling."""

    max_nodes: int = 9
    max_edges: int = 24
    max_subsets: int = 1 << 16


def _check_limits(g: Graph, limits: OracleLimits) -> None:
    if g.node_count > limits.max_nodes:
        raise BudgetExceededError(
            f"oracle is capped at {limits.max_nodes} nodes, got {g.node_count}"
        )
    if g.edge_count > limits.max_edges:
        raise BudgetExceededError(
            f"oracle is capped at {limits.max_edges} edges, got {g.edge_count}"
        )


# ---------------------------------------------------------------------------
# partition oracle


def _comp_hits(part: Partition, sets: Sequence[frozenset[str]]) -> list[int]:
    """Per component, a bitmask of the candidate sets present in it."""
    hits = [0] * part.component_count
    for si, t in enumerate(sets):
        for v in t:
            hits[part.assignment[v]] |= 1 << si
    return hits


def _match_sets_to_components(
    comp_choices: Sequence[Sequence[int]],
) -> dict[int, int] | None:
    """Kuhn matching: set index -> distinct component id, or None."""
    owner: dict[int, int] = {}

    def assign(i: int, banned: set[int]) -> bool:
        for c in comp_choices[i]:
            if c in banned:
                continue
            banned.add(c)
            if c not in owner or assign(owner[c], banned):
                owner[c] = i
                return True
        return False

    for i in range(len(comp_choices)):
        if not assign(i, set()):
            return None
    return {i: c for c, i in owner.items()}


def _satisfy_by_masks(
    inst: VariantInstance, part: Partition
) -> RepresentativeChoice | None:
    """Representatives satisfying every demand under part, or None.

    All choices are lexicographically minimal so results are canonical.
    """
    a = part.assignment
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    hits = _comp_hits(part, sets)
    if v == ALL_TO_ALL:
        for si, t in enumerate(sets):
            for x in t:
                if hits[a[x]] & ~(1 << si):
                    return None
        return RepresentativeChoice()
    if v == SINGLE_TO_ALL:
        single: dict[int, str] = {}
        for i in range(q):
            ok = [x for x in sorted(sets[i]) if hits[a[x]] & ~(1 << i) == 0]
            if not ok:
                return None
            single[i] = ok[0]
        return RepresentativeChoice(single=single)
    if v == SINGLE_TO_SINGLE:
        comp_choices = [sorted({a[x] for x in t}) for t in sets]
        match = _match_sets_to_components(comp_choices)
        if match is None:
            return None
        single = {
            i: min(x for x in sets[i] if a[x] == match[i]) for i in range(q)
        }
        return RepresentativeChoice(single=single)
    if v == FIXED_TO_SINGLE:
        s = inst.fixed
        assert s is not None
        single = {}
        for j in range(q):
            ok = [x for x in sorted(sets[j]) if a[x] != a[s]]
            if not ok:
                return None
            single[j] = ok[0]
        return RepresentativeChoice(single=single)
    if v == SOME_TO_SINGLE:
        comp_sets = [{a[x] for x in t} for t in sets]
        single = {}
        pairs: dict[tuple[int, int], str] = {}
        for j in range(q):
            chosen = None
            for t in sorted(sets[j]):
                if all(comp_sets[i] != {a[t]} for i in range(q) if i != j):
                    chosen = t
                    break
            if chosen is None:
                return None
            single[j] = chosen
        for i in range(q):
            for j in range(q):
                if i != j:
                    pairs[(i, j)] = min(
                        x for x in sets[i] if a[x] != a[single[j]]
                    )
        return RepresentativeChoice(single=single, pairs=pairs)
    if v == SOME_TO_SOME:
        pairs = {}
        for i in range(q):
            for j in range(i + 1, q):
                found = None
                for x in sorted(sets[i]):
                    ys = [y for y in sorted(sets[j]) if a[y] != a[x]]
                    if ys:
                        found = (x, ys[0])
                        break
                if found is None:
                    return None
                pairs[(i, j)], pairs[(j, i)] = found
        return RepresentativeChoice(pairs=pairs)
    # some-to-all
    pairs = {}
    for i in range(q):
        for j in range(q):
            if i == j:
                continue
            ok = [x for x in sorted(sets[i]) if not (hits[a[x]] >> j) & 1]
            if not ok:
                return None
            pairs[(i, j)] = ok[0]
    return RepresentativeChoice(pairs=pairs)


def exact_solve(
    inst: VariantInstance, limits: OracleLimits | None = None
) -> CutSolution:
    """Optimal solution by set-partition enumeration.

    Ties go to the earliest partition in restricted-growth order; raises
    InfeasibleInstanceError when no cut satisfies the demands.
    """
    limits = limits or OracleLimits()
    g = inst.graph
    _check_limits(g, limits)
    order = sorted(g.nodes)
    best: tuple[float, Cut, RepresentativeChoice] | None = None
    for blocks in set_partitions(order):
        cls = {v: bi for bi, block in enumerate(blocks) for v in block}
        cut = frozenset(
            e for e, (u, w, _) in enumerate(g.edges) if cls[u] != cls[w]
        )
        weight = cut_weight(g, cut)
        if best is not None and weight >= best[0] - _TOL:
            continue
        part = components(g, cut)
        reps = _satisfy_by_masks(inst, part)
        if reps is None:
            continue
        best = (weight, cut, reps)
    if best is None:
        raise InfeasibleInstanceError("no cut satisfies the demands")
    return _finish(inst, best[1], best[2])


# ---------------------------------------------------------------------------
# edge-subset oracle (independent implementation for cross-checking)


def _satisfy_by_tuples(
    inst: VariantInstance, part: Partition
) -> RepresentativeChoice | None:
    """Demand check by direct loops over representative tuples."""
    a = part.assignment
    sets = inst.family.sets
    q = inst.q
    v = inst.variant
    if v == ALL_TO_ALL:
        for i, j in itertools.combinations(range(q), 2):
            if any(a[x] == a[y] for x in sets[i] for y in sets[j]):
                return None
        return RepresentativeChoice()
    if v == SINGLE_TO_ALL:
        single: dict[int, str] = {}
        for i in range(q):
            for t in sorted(sets[i]):
                others = (x for j in range(q) if j != i for x in sets[j])
                if all(a[x] != a[t] for x in others):
                    single[i] = t
                    break
            else:
                return None
        return RepresentativeChoice(single=single)
    if v == SINGLE_TO_SINGLE:
        for combo in itertools.product(*(sorted(t) for t in sets)):
            if len({a[t] for t in combo}) == q:
                return RepresentativeChoice(single=dict(enumerate(combo)))
        return None
    if v == FIXED_TO_SINGLE:
        s = inst.fixed
        assert s is not None
        single = {}
        for j in range(q):
            for t in sorted(sets[j]):
                if a[t] != a[s]:
                    single[j] = t
                    break
            else:
                return None
        return RepresentativeChoice(single=single)
    if v == SOME_TO_SINGLE:
        for combo in itertools.product(*(sorted(t) for t in sets)):
            pairs: dict[tuple[int, int], str] = {}
            good = True
            for i in range(q):
                for j in range(q):
                    if i == j:
                        continue
                    for u in sorted(sets[i]):
                        if a[u] != a[combo[j]]:
                            pairs[(i, j)] = u
                            break
                    else:
                        good = False
                    if not good:
                        break
                if not good:
                    break
            if good:
                return RepresentativeChoice(single=dict(enumerate(combo)), pairs=pairs)
        return None
    if v == SOME_TO_SOME:
        pairs = {}
        for i in range(q):
            for j in range(i + 1, q):
                for u, w in itertools.product(sorted(sets[i]), sorted(sets[j])):
                    if a[u] != a[w]:
                        pairs[(i, j)], pairs[(j, i)] = u, w
                        break
                else:
                    return None
        return RepresentativeChoice(pairs=pairs)
    # some-to-all
    pairs = {}
    for i in range(q):
        for j in range(q):
            if i == j:
                continue
            for t in sorted(sets[i]):
                if all(a[x] != a[t] for x in sets[j]):
                    pairs[(i, j)] = t
                    break
            else:
                return None
    return RepresentativeChoice(pairs=pairs)


def exact_solve_edge_subsets(
    inst: VariantInstance, limits: OracleLimits | None = None
) -> CutSolution:
    """Optimal solution by brute force over all edge subsets.

    Subsets are visited in increasing (weight, bitmask) order, so the first
    satisfiable subset is optimal.  Deliberately shares no search machinery
    with exact_solve.
    """
    limits = limits or OracleLimits()
    g = inst.graph
    _check_limits(g, limits)
    m = g.edge_count
    if (1 << m) > limits.max_subsets:
        raise BudgetExceededError(
            f"edge-subset oracle is capped at {limits.max_subsets} subsets"
        )
    ws = np.array([w for _, _, w in g.edges], dtype=np.float64)
    masks = np.arange(1 << m, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(m)) & 1
    weights = bits.astype(np.float64) @ ws
    for s in np.lexsort((masks, weights)):
        mask = int(masks[s])
        cut = frozenset(e for e in range(m) if (mask >> e) & 1)
        part = components(g, cut)
        reps = _satisfy_by_tuples(inst, part)
        if reps is not None:
            return _finish(inst, cut, reps)
    raise InfeasibleInstanceError("no cut satisfies the demands")


# ---------------------------------------------------------------------------
# helper oracles for subproblems


def exact_multicut(
    g: Graph,
    demand_pairs: Iterable[tuple[str, str]],
    limits: OracleLimits | None = None,
) -> tuple[Cut, float]:
    """Minimum cut separating every demand pair, by partition enumeration."""
    limits = limits or OracleLimits()
    _check_limits(g, limits)
    pairs = []
    for u, v in demand_pairs:
        g.check_nodes([u, v])
        if u == v:
            raise PreconditionError(f"demand pair ({u!r}, {v!r}) cannot be separated")
        pairs.append((u, v))
    best: tuple[float, Cut] | None = None
    for blocks in set_partitions(sorted(g.nodes)):
        cls = {v: bi for bi, block in enumerate(blocks) for v in block}
        cut = frozenset(
            e for e, (u, w, _) in enumerate(g.edges) if cls[u] != cls[w]
        )
        weight = cut_weight(g, cut)
        if best is not None and weight >= best[0] - _TOL:
            continue
        part = components(g, cut)
        if all(part.assignment[u] != part.assignment[v] for u, v in pairs):
            best = (weight, cut)
    assert best is not None  # the all-singleton partition splits every pair
    return best[1], best[0]


def exact_multiway_cut(
    g: Graph, terminals: Sequence[str], limits: OracleLimits | None = None
) -> tuple[Cut, float]:
    """Minimum cut putting the given terminals in pairwise distinct components."""
    terms = list(terminals)
    if len(set(terms)) != len(terms):
        raise PreconditionError("terminals must be distinct")
    if len(terms) < 2:
        return frozenset(), 0.0
    return exact_multicut(g, itertools.combinations(terms, 2), limits)


def exact_steiner_multicut(
    g: Graph,
    groups: Sequence[Iterable[str]],
    limits: OracleLimits | None = None,
) -> tuple[Cut, float]:
    """Minimum cut leaving no group inside a single component."""
    limits = limits or OracleLimits()
    _check_limits(g, limits)
    gs = [g.check_nodes(x) for x in groups]
    for i, x in enumerate(gs):
        if len(x) < 2:
            raise InfeasibleInstanceError(
                f"group {i} has fewer than two nodes and can never be split"
            )
    best: tuple[float, Cut] | None = None
    for blocks in set_partitions(sorted(g.nodes)):
        cls = {v: bi for bi, block in enumerate(blocks) for v in block}
        cut = frozenset(
            e for e, (u, w, _) in enumerate(g.edges) if cls[u] != cls[w]
        )
        weight = cut_weight(g, cut)
        if best is not None and weight >= best[0] - _TOL:
            continue
        part = components(g, cut)
        if all(len({part.assignment[v] for v in x}) >= 2 for x in gs):
            best = (weight, cut)
    if best is None:
        raise InfeasibleInstanceError("no cut splits every group")
    return best[1], best[0]
