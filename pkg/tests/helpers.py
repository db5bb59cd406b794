"""Seeded corpus generators and analytic bound tables shared by the tests.

Every generator takes a numpy Generator so corpora are reproducible; test
modules derive theirs from repcut.rng.stream with TAG_CORPUS and a fixed seed.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from repcut import rng as rngmod
from repcut.graph import Graph, components, cut_weight
from repcut.relax import LIFTED, LabelingInstance, uniform_labels
from repcut.variants import (
    ALL_TO_ALL,
    FIXED_TO_SINGLE,
    SINGLE_TO_ALL,
    SINGLE_TO_SINGLE,
    SOME_TO_ALL,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    CandidateFamily,
    VariantInstance,
    check_feasibility,
)


def corpus_rng(seed: int) -> np.random.Generator:
    return rngmod.stream(seed, rngmod.TAG_CORPUS)


# ---------------------------------------------------------------------------
# random graphs and instances


def random_connected_graph(
    rng: np.random.Generator,
    min_nodes: int = 3,
    max_nodes: int = 8,
    max_edges: int = 12,
    max_weight: int = 10,
) -> Graph:
    """Random spanning tree plus extra simple edges, integer weights."""
    n = int(rng.integers(min_nodes, max_nodes + 1))
    names = tuple(f"n{i}" for i in range(n))
    edges: list[tuple[str, str, float]] = []
    present: set[tuple[int, int]] = set()
    for i in range(1, n):
        p = int(rng.integers(0, i))
        present.add((p, i))
        edges.append((names[p], names[i], float(rng.integers(1, max_weight + 1))))
    budget = max_edges - (n - 1)
    extra = int(rng.integers(0, budget + 1)) if budget > 0 else 0
    for _ in range(extra):
        a, b = int(rng.integers(0, n)), int(rng.integers(0, n))
        lo, hi = min(a, b), max(a, b)
        if lo == hi or (lo, hi) in present:
            continue
        present.add((lo, hi))
        edges.append((names[lo], names[hi], float(rng.integers(1, max_weight + 1))))
    return Graph.build(names, edges)


def random_tree(
    rng: np.random.Generator,
    min_nodes: int = 2,
    max_nodes: int = 9,
    max_weight: int = 10,
) -> Graph:
    return random_connected_graph(
        rng, min_nodes=min_nodes, max_nodes=max_nodes, max_edges=0,
        max_weight=max_weight,
    )


def random_family(
    rng: np.random.Generator, nodes: tuple[str, ...], q: int
) -> CandidateFamily:
    """q nonempty subsets; sizes biased small, occasional full-vertex set."""
    sets = []
    for _ in range(q):
        if rng.random() < 0.08:
            sets.append(nodes)
            continue
        size = 1 + min(int(rng.geometric(0.55)) - 1, len(nodes) - 1)
        picks = rng.choice(len(nodes), size=size, replace=False)
        sets.append(tuple(nodes[i] for i in picks))
    return CandidateFamily.build(sets)


def random_instance(
    rng: np.random.Generator,
    variant: str,
    min_nodes: int = 3,
    max_nodes: int = 7,
    max_edges: int = 10,
    max_q: int = 3,
    max_weight: int = 10,
) -> VariantInstance:
    """Unfiltered random instance (may be infeasible)."""
    g = random_connected_graph(
        rng, min_nodes=min_nodes, max_nodes=max_nodes, max_edges=max_edges,
        max_weight=max_weight,
    )
    q = int(rng.integers(1, max_q + 1))
    fam = random_family(rng, g.nodes, q)
    fixed = None
    if variant == FIXED_TO_SINGLE:
        fixed = g.nodes[int(rng.integers(0, len(g.nodes)))]
    return VariantInstance(variant, g, fam, fixed)


def feasible_instance(
    rng: np.random.Generator,
    variant: str,
    min_nodes: int = 3,
    max_nodes: int = 7,
    max_edges: int = 10,
    max_q: int = 3,
    max_weight: int = 10,
    tries: int = 500,
) -> VariantInstance:
    for _ in range(tries):
        inst = random_instance(
            rng, variant, min_nodes=min_nodes, max_nodes=max_nodes,
            max_edges=max_edges, max_q=max_q, max_weight=max_weight,
        )
        if check_feasibility(inst).feasible:
            return inst
    raise RuntimeError(f"no feasible {variant} instance in {tries} draws")


def random_lifted_instance(
    rng: np.random.Generator,
    min_free: int = 2,
    max_free: int = 4,
    max_labels: int = 3,
    max_weight: int = 10,
    restrict_fraction: float = 0.3,
) -> LabelingInstance:
    """Connected lifted-mode instance: k terminals, k+1 labels, free nodes."""
    k = int(rng.integers(2, max_labels + 1))
    free = int(rng.integers(min_free, max_free + 1))
    terminals = tuple(f"t{i}" for i in range(k))
    others = tuple(f"v{i}" for i in range(free))
    nodes = terminals + others
    edges: list[tuple[str, str, float]] = []
    order = list(nodes)
    for i in range(1, len(order)):
        p = int(rng.integers(0, i))
        edges.append((order[p], order[i], float(rng.integers(1, max_weight + 1))))
    for _ in range(int(rng.integers(0, 4))):
        a, b = int(rng.integers(0, len(order))), int(rng.integers(0, len(order)))
        if a != b:
            edges.append((order[a], order[b], float(rng.integers(1, max_weight + 1))))
    g = Graph.build(nodes, edges)
    labels = dict(uniform_labels(g, k + 1, {t: i for i, t in enumerate(terminals)}))
    for v in others:
        if rng.random() < restrict_fraction:
            # drop one non-lifted label; keeps the lifted fallback available
            drop = int(rng.integers(0, k))
            labels[v] = frozenset(l for l in labels[v] if l != drop)
    return LabelingInstance(g, k + 1, labels, terminals, LIFTED)


def exhaustive_labeling_optimum(inst: LabelingInstance) -> float:
    """Minimum cut weight over every labeling allowed by the instance."""
    g = inst.graph
    nodes = g.nodes
    choices = [sorted(inst.labels[v]) for v in nodes]
    best = math.inf
    for combo in itertools.product(*choices):
        assign = dict(zip(nodes, combo))
        w = sum(w for u, v, w in g.edges if assign[u] != assign[v])
        best = min(best, w)
    return best


def brute_min_separating_cut(g: Graph, source: str, sinks: set[str]) -> float:
    """Min boundary weight over node sides containing source, avoiding sinks."""
    rest = [v for v in g.nodes if v != source and v not in sinks]
    best = math.inf
    for m in range(1 << len(rest)):
        side = {source} | {rest[i] for i in range(len(rest)) if m >> i & 1}
        w = sum(wt for u, v, wt in g.edges if (u in side) != (v in side))
        best = min(best, w)
    return best


# ---------------------------------------------------------------------------
# threshold-scheme density bound tables
#
# Regime samplers draw simplex points inside each bound regime (margin M keeps
# both the point and its epsilon-perturbation strictly interior).  Independent
# thresholds use blocking mass a = (sum of coordinates that carry a threshold,
# minus the edge pair)/b; the final coordinate has no threshold and never
# blocks, and the regime-4 condition requires a second always-capturing
# coordinate above b.

DENSITY_B = 0.4
DENSITY_K = 4
_M = 0.02
IT_REGIMES = (1, 2, 3, 4, 5)
ST_REGIMES = (1, 2, 3)
DT_REGIMES = (1, 2, 3)


def _fill(rng, fixed: dict[int, float], free_idx: tuple[int, ...]):
    rem = 1.0 - sum(fixed.values())
    if rem < 0:
        return None
    parts = rng.dirichlet(np.ones(len(free_idx))) * rem
    u = np.zeros(DENSITY_K + 1)
    for i, v in fixed.items():
        u[i] = v
    for i, v in zip(free_idx, parts):
        u[i] = v
    return u


def sample_it_point(rng: np.random.Generator, regime: int) -> np.ndarray:
    b, m = DENSITY_B, _M
    for _ in range(10000):
        if regime == 1:
            u = rng.dirichlet(np.ones(DENSITY_K + 1))
            if np.all(u <= b - m) and u[2] + u[3] >= m:
                return u
        elif regime == 2:
            u1 = rng.uniform(b + m, 0.55)
            u0 = rng.uniform(m, min(b - m, 1 - u1 - 3 * m))
            u = _fill(rng, {0: u0, 1: u1}, (2, 3, 4))
            if u is not None and max(u[2], u[3]) <= b - m and u[2] + u[3] >= m:
                return u
        elif regime == 3:
            u2 = rng.uniform(b + m, 0.55)
            u = _fill(rng, {2: u2}, (0, 1, 3, 4))
            if u is not None and max(u[0], u[1]) <= b - m:
                return u
        elif regime == 4:
            u1 = rng.uniform(b + m, b + 2 * m)
            u2 = rng.uniform(b + m, b + 2 * m)
            u0 = rng.uniform(0.01, min(b - m, 1 - u1 - u2 - 0.01))
            u = _fill(rng, {0: u0, 1: u1, 2: u2}, (3, 4))
            if u is not None:
                return u
        else:
            u0 = rng.uniform(b + m, b + 2 * m)
            u1 = rng.uniform(b + m, b + 2 * m)
            u = _fill(rng, {0: u0, 1: u1}, (2, 3, 4))
            if u is not None:
                return u
    raise RuntimeError(f"independent-thresholds regime {regime} sampler stuck")


def it_bound(u: np.ndarray, regime: int) -> float:
    b = DENSITY_B
    ui, uj = u[0], u[1]
    a = (1.0 - ui - uj - u[DENSITY_K]) / b
    if regime == 1:
        return (2 * (1 - math.exp(-a)) / (a * b)
                - (ui + uj) * (1 - (1 + a) * math.exp(-a)) / (a * a * b * b))
    if regime == 2:
        return (a + math.exp(-a) - 1) / (a * a * b)
    if regime == 3:
        return 1 / b - (ui + uj) / (6 * b * b)
    if regime == 4:
        return 1 / (3 * b)
    return 0.0


def sample_st_point(rng: np.random.Generator, regime: int) -> np.ndarray:
    m = _M
    for _ in range(10000):
        if regime == 1:
            u0 = rng.uniform(0.1, 0.3)
            u1 = rng.uniform(u0 + m, 0.5)
            u2 = rng.uniform(0, u0 - m)
            u3 = rng.uniform(0, u0 - m)
        elif regime == 2:
            u0 = rng.uniform(0.1, 0.25)
            u1 = rng.uniform(u0 + 3 * m, 0.5)
            u2 = rng.uniform(u0 + m, u1 - m)
            u3 = rng.uniform(0, u0 - m)
        else:
            u0 = rng.uniform(0.05, 0.2)
            u1 = rng.uniform(u0 + m, 0.35)
            u2 = rng.uniform(u1 + m, 0.5)
            u3 = rng.uniform(0, u0 - m)
        s = u0 + u1 + u2 + u3
        if s <= 1.0:
            return np.array([u0, u1, u2, u3, 1.0 - s])
    raise RuntimeError("single-threshold regime sampler stuck")


def st_bound(u: np.ndarray, regime: int) -> float:
    # uniform phi on [0,1): phi == 1 at every sampled coordinate
    return 4.0 / 3.0 if regime == 2 else 1.5


def sample_dt_point(rng: np.random.Generator, regime: int) -> np.ndarray:
    b, m = DENSITY_B, _M
    for _ in range(10000):
        if regime == 1:
            u0 = rng.uniform(0.08, 0.2)
            u1 = rng.uniform(u0 + m, b - m)
            u2 = rng.uniform(0, u0 - m)
            u3 = rng.uniform(0, u0 - m)
        elif regime == 2:
            u0 = rng.uniform(0.06, 0.16)
            u1 = rng.uniform(u0 + 3 * m, b - m)
            u2 = rng.uniform(u0 + m, u1 - m)
            u3 = rng.uniform(0, u0 - m)
        else:
            u0 = rng.uniform(0.05, 0.12)
            u1 = rng.uniform(u0 + m, 0.2)
            u2 = rng.uniform(u1 + m, b - m)
            u3 = rng.uniform(0, u0 - m)
        s = u0 + u1 + u2 + u3
        if s <= 1.0:
            return np.array([u0, u1, u2, u3, 1.0 - s])
    raise RuntimeError("descending-thresholds regime sampler stuck")


def dt_bound(u: np.ndarray, regime: int) -> float:
    b = DENSITY_B

    def cum(s: float, t: float) -> float:
        return (min(t, b) - min(s, b)) / b

    psi = 1 / b
    u0, u1, u2 = u[0], u[1], u[2]
    if regime == 1:
        return (1 - cum(u0, u1)) * psi + psi
    if regime == 2:
        return (1 - cum(u0, u1)) * (1 - cum(u0, u2)) * psi + psi
    return ((1 - cum(u0, u1)) * (1 - cum(u0, u2)) * psi
            + (1 - cum(u1, u2)) * psi)


def assert_solution_not_below_oracle(weight: float, oracle: float) -> None:
    assert weight >= oracle - 1e-9, (
        f"solver weight {weight} beats the exact optimum {oracle}"
    )


def induced_cut_weight(g: Graph, cut) -> float:
    """Weight of the cut induced by the components of g minus cut."""
    part = components(g, cut)
    return cut_weight(
        g,
        frozenset(
            e for e, (u, v, _) in enumerate(g.edges)
            if not part.same_component(u, v)
        ),
    )
