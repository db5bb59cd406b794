"""Rounding schemes: label safety, determinism, and density estimates."""
from __future__ import annotations

import math

import numpy as np
import pytest

from repcut import rng as rngmod
from repcut.errors import PreconditionError
from repcut.graph import Graph, cut_weight, dichromatic_edges
from repcut.relax import LIFTED, UML, LabelingInstance, SimplexEmbedding, uniform_labels
from repcut.rounding import (
    COMBINED,
    DESCENDING_THRESHOLDS,
    INDEPENDENT_THRESHOLDS,
    KLEINBERG_TARDOS,
    SCHEMES,
    SINGLE_THRESHOLD,
    PiecewiseConstantDensity,
    RoundingParams,
    estimate_cut_density,
    round_combined,
    round_descending_thresholds,
    round_independent_thresholds,
    round_kleinberg_tardos,
    round_single_threshold,
)

from helpers import random_lifted_instance, corpus_rng


def _interior_embedding(inst: LabelingInstance, rng) -> SimplexEmbedding:
    """Random feasible embedding: terminals on basis vectors, rest interior."""
    d = inst.label_count
    pts = {}
    for v in inst.graph.nodes:
        if v in inst.terminals:
            e = np.zeros(d)
            e[inst.terminals.index(v)] = 1.0
            pts[v] = e
        else:
            x = rng.dirichlet(np.ones(d))
            # zero out forbidden coordinates, renormalize
            mask = np.zeros(d)
            for l in inst.labels[v]:
                mask[l] = 1.0
            x = x * mask
            pts[v] = x / x.sum()
    return SimplexEmbedding(d, pts)


def _run(scheme: str, inst, emb, seed: int, params: RoundingParams):
    if scheme == KLEINBERG_TARDOS:
        return round_kleinberg_tardos(inst, emb, seed)
    if scheme == SINGLE_THRESHOLD:
        return round_single_threshold(inst, emb, seed, params.phi)
    if scheme == DESCENDING_THRESHOLDS:
        return round_descending_thresholds(inst, emb, seed, params.b)
    if scheme == INDEPENDENT_THRESHOLDS:
        return round_independent_thresholds(inst, emb, seed, params.b)
    return round_combined(inst, emb, params, seed)


def test_schemes_respect_labels_and_terminals():
    rng = corpus_rng(7101)
    params = RoundingParams(b=0.5)
    for case in range(12):
        inst = random_lifted_instance(rng)
        emb = _interior_embedding(inst, rng)
        for scheme in SCHEMES + (COMBINED,):
            for seed in (case, 1000 + case):
                lab = _run(scheme, inst, emb, seed, params)
                assert set(lab.assignment) == set(inst.graph.nodes)
                for v, l in lab.assignment.items():
                    assert l in inst.labels[v]
                for i, t in enumerate(inst.terminals):
                    assert lab.assignment[t] == i


def test_same_seed_reproduces_labeling_exactly():
    rng = corpus_rng(7102)
    inst = random_lifted_instance(rng, min_free=3, max_free=4)
    emb = _interior_embedding(inst, rng)
    params = RoundingParams(b=0.6)
    for scheme in SCHEMES + (COMBINED,):
        a = _run(scheme, inst, emb, 42, params)
        b = _run(scheme, inst, emb, 42, params)
        assert a.assignment == b.assignment


def test_combined_degenerate_mixture_reproduces_each_pure_scheme():
    rng = corpus_rng(7103)
    inst = random_lifted_instance(rng, min_free=3, max_free=4)
    emb = _interior_embedding(inst, rng)
    for idx, scheme in enumerate(SCHEMES):
        probs = tuple(1.0 if i == idx else 0.0 for i in range(4))
        params = RoundingParams(b=0.55, probabilities=probs)
        for seed in range(8):
            mixed = round_combined(inst, emb, params, seed)
            pure = _run(scheme, inst, emb, seed, params)
            assert mixed.assignment == pure.assignment


def test_threshold_schemes_reject_mode_without_fallback():
    g = Graph.build(("a", "b", "c"), [("a", "b", 1.0), ("b", "c", 2.0)])
    labels = dict(uniform_labels(g, 3))
    labels["b"] = frozenset({0, 1})  # no fallback label, not pinned
    inst = LabelingInstance(g, 3, labels, (), UML)
    emb = SimplexEmbedding(
        3,
        {
            "a": np.array([0.5, 0.3, 0.2]),
            "b": np.array([0.6, 0.4, 0.0]),
            "c": np.array([0.2, 0.2, 0.6]),
        },
    )
    with pytest.raises(PreconditionError):
        round_single_threshold(inst, emb, 0)
    with pytest.raises(PreconditionError):
        round_descending_thresholds(inst, emb, 0)
    with pytest.raises(PreconditionError):
        round_independent_thresholds(inst, emb, 0)
    # the uniform-label scheme has no processing order and accepts any mode
    lab = round_kleinberg_tardos(inst, emb, 0)
    for v, l in lab.assignment.items():
        assert l in labels[v]


def test_labeling_cut_weight_and_restrict():
    g = Graph.build(("a", "b", "c"), [("a", "b", 2.0), ("b", "c", 3.0)])
    inst = LabelingInstance(g, 2, uniform_labels(g, 2), (), UML)
    emb = SimplexEmbedding(
        2,
        {
            "a": np.array([1.0, 0.0]),
            "b": np.array([1.0, 0.0]),
            "c": np.array([0.0, 1.0]),
        },
    )
    # integral embedding: every threshold draw reproduces the labeling
    lab = round_kleinberg_tardos(inst, emb, 3)
    assert lab.assignment == {"a": 0, "b": 0, "c": 1}
    assert lab.cut(g) == dichromatic_edges(g, lab.assignment)
    assert lab.weight(g) == cut_weight(g, lab.cut(g)) == 3.0
    sub = lab.restrict(("a", "c"))
    assert sub.assignment == {"a": 0, "c": 1}


# ---------------------------------------------------------------------------
# density estimation


_POINT = np.array([0.25, 0.2, 0.15, 0.1, 0.3])
_EDGE = (0, 1)
_B = 0.4


def _two_point_instance(eps: float):
    """Lifted instance whose free nodes sit at _POINT and its perturbation."""
    k = 4
    terminals = tuple(f"t{i}" for i in range(k))
    nodes = terminals + ("u", "v")
    edges = [("u", "v", 1.0)] + [(t, "u", 1.0) for t in terminals]
    g = Graph.build(nodes, edges)
    labels = uniform_labels(g, k + 1, {t: i for i, t in enumerate(terminals)})
    inst = LabelingInstance(g, k + 1, labels, terminals, LIFTED)
    other = _POINT.copy()
    other[_EDGE[0]] += eps
    other[_EDGE[1]] -= eps
    pts = {"u": _POINT, "v": other}
    for i, t in enumerate(terminals):
        e = np.zeros(k + 1)
        e[i] = 1.0
        pts[t] = e
    return inst, SimplexEmbedding(k + 1, pts)


def test_batch_density_agrees_with_per_call_rounding():
    """The vectorized estimator and the per-call schemes share one law."""
    eps = 0.05
    inst, emb = _two_point_instance(eps)
    calls = 3000
    batch_samples = 20_000
    for scheme in SCHEMES + (COMBINED,):
        params = RoundingParams(b=_B, seed=902)
        est = estimate_cut_density(
            scheme, _POINT, _EDGE, epsilon=eps, samples=batch_samples, params=params
        )
        hits = 0
        for seed in range(calls):
            lab = _run(scheme, inst, emb, 31_000 + seed, params)
            hits += lab.assignment["u"] != lab.assignment["v"]
        p = hits / calls
        per_call = p / eps
        se_pc = math.sqrt(max(p * (1 - p), 1e-12) / calls) / eps
        tol = 4.0 * math.hypot(est.std_error, se_pc)
        assert abs(est.estimate - per_call) <= tol, (
            f"{scheme}: batch {est.estimate:.3f} vs per-call {per_call:.3f} "
            f"(tol {tol:.3f})"
        )


def test_density_estimate_bookkeeping_and_determinism():
    params = RoundingParams(b=_B, seed=5)
    a = estimate_cut_density(
        DESCENDING_THRESHOLDS, _POINT, _EDGE, epsilon=1e-3, samples=30_000,
        params=params,
    )
    b = estimate_cut_density(
        DESCENDING_THRESHOLDS, _POINT, _EDGE, epsilon=1e-3, samples=30_000,
        params=params,
    )
    assert (a.estimate, a.separations) == (b.estimate, b.separations)
    assert a.samples == 30_000
    assert a.estimate == pytest.approx(a.separations / a.samples / 1e-3)
    p = a.separations / a.samples
    assert a.std_error == pytest.approx(math.sqrt(p * (1 - p) / a.samples) / 1e-3)


def test_density_epsilon_halving_is_consistent():
    """Halving the perturbation moves the estimate by at most 3 joint Ses."""
    params = RoundingParams(b=_B, seed=17)
    coarse = estimate_cut_density(
        DESCENDING_THRESHOLDS, _POINT, _EDGE, epsilon=1e-3, samples=200_000,
        params=params,
    )
    fine = estimate_cut_density(
        DESCENDING_THRESHOLDS, _POINT, _EDGE, epsilon=5e-4, samples=200_000,
        params=params,
    )
    tol = 3.0 * math.hypot(coarse.std_error, fine.std_error)
    assert abs(coarse.estimate - fine.estimate) <= tol


def test_density_zero_when_both_edge_coordinates_exceed_b():
    """Coordinates above b always pass their threshold, so the pair never
    splits on either edge label and every other coordinate is shared."""
    point = np.array([0.45, 0.44, 0.05, 0.03, 0.03])
    for scheme in (INDEPENDENT_THRESHOLDS, DESCENDING_THRESHOLDS):
        est = estimate_cut_density(
            scheme, point, (0, 1), epsilon=1e-3, samples=50_000,
            params=RoundingParams(b=_B, seed=3),
        )
        assert est.separations == 0
        assert est.estimate == 0.0


def test_combined_density_mixture_matches_pure_scheme_statistically():
    probs = (0.0, 0.0, 1.0, 0.0)
    params_mix = RoundingParams(b=_B, probabilities=probs, seed=11)
    params_dt = RoundingParams(b=_B, seed=12)
    mixed = estimate_cut_density(
        COMBINED, _POINT, _EDGE, epsilon=2e-2, samples=40_000, params=params_mix
    )
    pure = estimate_cut_density(
        DESCENDING_THRESHOLDS, _POINT, _EDGE, epsilon=2e-2, samples=40_000,
        params=params_dt,
    )
    tol = 4.0 * math.hypot(mixed.std_error, pure.std_error)
    assert abs(mixed.estimate - pure.estimate) <= tol


def test_estimate_cut_density_input_validation():
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, np.array([0.5, 0.6]), (0, 1))
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, _POINT, (2, 2))
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, _POINT, (0, 9))
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, _POINT, _EDGE, epsilon=0.25)
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, _POINT, _EDGE, samples=0)
    with pytest.raises(PreconditionError):
        estimate_cut_density(SINGLE_THRESHOLD, np.array([1.0]), (0, 1))
    with pytest.raises(PreconditionError):
        estimate_cut_density("mystery", _POINT, _EDGE, samples=10)


# ---------------------------------------------------------------------------
# configuration objects


def test_piecewise_density_validation():
    with pytest.raises(PreconditionError):
        PiecewiseConstantDensity((0.0,), ())
    with pytest.raises(PreconditionError):
        PiecewiseConstantDensity((0.1, 1.0), (1.0,))
    with pytest.raises(PreconditionError):
        PiecewiseConstantDensity((0.0, 0.5, 0.5, 1.0), (1.0, 1.0, 1.0))
    with pytest.raises(PreconditionError):
        PiecewiseConstantDensity((0.0, 0.5, 1.0), (2.5, -0.5))
    with pytest.raises(PreconditionError):
        PiecewiseConstantDensity((0.0, 1.0), (0.9,))


def test_piecewise_density_evaluation_and_sampling():
    phi = PiecewiseConstantDensity((0.0, 0.5, 1.0), (1.6, 0.4))
    assert phi.integral() == pytest.approx(1.0)
    assert phi(0.25) == 1.6
    assert phi(0.75) == 0.4
    assert phi(-0.1) == 0.0
    assert phi(1.0) == 0.0
    gen = rngmod.stream(81, rngmod.TAG_DENSITY)
    xs = np.asarray(phi.sample(gen, 20_000))
    assert float(xs.min()) > 0.0 and float(xs.max()) < 1.0
    low = float((xs < 0.5).mean())
    # cell mass 0.8; four-sigma band
    assert abs(low - 0.8) <= 4.0 * math.sqrt(0.8 * 0.2 / 20_000)
    one = phi.sample(gen)
    assert 0.0 < float(one) < 1.0


def test_rounding_params_validation():
    with pytest.raises(PreconditionError):
        RoundingParams(b=0.0)
    with pytest.raises(PreconditionError):
        RoundingParams(b=1.2)
    with pytest.raises(PreconditionError):
        RoundingParams(probabilities=(0.5, 0.5, 0.0))
    with pytest.raises(PreconditionError):
        RoundingParams(probabilities=(0.5, 0.5, 0.5, -0.5))
    with pytest.raises(PreconditionError):
        RoundingParams(probabilities=(0.3, 0.3, 0.3, 0.3))
