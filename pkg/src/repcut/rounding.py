"""Randomized rounding of simplex embeddings, and cut-density estimation.

Four schemes turn an embedding into a labeling:

* kleinberg-tardos: repeatedly pick a uniform label and a uniform threshold
  in (0, 1], assigning the label to every unassigned node whose coordinate
  reaches the threshold.  Works in every mode.
* single-threshold: one threshold drawn from a density phi on [0, 1), one
  uniform permutation of all labels except the last; survivors take the
  last label.
* descending-thresholds: one threshold per label, uniform on (0, b],
  processed in descending threshold order (ties broken by fresh uniforms).
* independent-thresholds: one threshold per label, uniform on (0, b],
  processed in a uniform random order.

The threshold schemes never permute the last label: in lifted mode that is
the terminal-free lifted coordinate, in multiway mode the last terminal's
label.  They require every node either to allow the last label or to be
pinned to a single label, which lifted and multiway instances guarantee.

Nodes exactly at a threshold are assigned (comparisons use >=), and
thresholds exclude exact zero, so a forbidden (identically zero) coordinate
can never capture a node.

round_combined draws one of the four schemes by the configured mixture
probabilities and delegates with the caller's seed unchanged, so a
degenerate mixture reproduces the underlying scheme bit for bit.

estimate_cut_density measures the limiting separation probability per unit
perturbation for a pair of points (u, u + eps * (e_i - e_j)) under a scheme,
using one vectorized pass over all samples.  The batch samplers implement
the same laws as the per-call rounders and are cross-validated in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from . import rng as rngmod
from .errors import PreconditionError, SolverFailureError
from .graph import Cut, Graph, cut_weight, dichromatic_edges
from .relax import LIFTED, MULTIWAY, LabelingInstance, SimplexEmbedding

_KT_CAP = 10_000_000
_KT_BLOCK = 64

KLEINBERG_TARDOS = "kleinberg-tardos"
SINGLE_THRESHOLD = "single-threshold"
DESCENDING_THRESHOLDS = "descending-thresholds"
INDEPENDENT_THRESHOLDS = "independent-thresholds"
COMBINED = "combined"
SCHEMES = (
    KLEINBERG_TARDOS,
    SINGLE_THRESHOLD,
    DESCENDING_THRESHOLDS,
    INDEPENDENT_THRESHOLDS,
)


@dataclass(frozen=True)
class PiecewiseConstantDensity:
    """Probability density on [0, 1) that is constant between breakpoints."""

    breaks: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.breaks) < 2 or len(self.values) != len(self.breaks) - 1:
            raise PreconditionError("need one density value per cell")
        if self.breaks[0] != 0.0 or self.breaks[-1] != 1.0:
            raise PreconditionError("breakpoints must span [0, 1]")
        if any(b >= c for b, c in zip(self.breaks, self.breaks[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")
        if any(v < 0 for v in self.values):
            raise PreconditionError("density values must be nonnegative")
        if abs(self.integral() - 1.0) > 1e-9:
            raise PreconditionError("density must integrate to one")

    def integral(self) -> float:
        return sum(
            v * (b2 - b1)
            for v, b1, b2 in zip(self.values, self.breaks, self.breaks[1:])
        )

    @staticmethod
    def uniform() -> "PiecewiseConstantDensity":
        return PiecewiseConstantDensity((0.0, 1.0), (1.0,))

    def __call__(self, x: float) -> float:
        """Density value at x."""
        if x < 0.0 or x >= 1.0:
            return 0.0
        cell = int(np.searchsorted(np.asarray(self.breaks), x, side="right")) - 1
        return self.values[cell]

    def sample(self, generator: np.random.Generator, size=None) -> np.ndarray | float:
        """Inverse-CDF draw; exact zero is excluded."""
        u = rngmod.unit_open(generator, size)
        breaks = np.asarray(self.breaks)
        widths = np.diff(breaks)
        masses = np.asarray(self.values) * widths
        cdf = np.cumsum(masses)
        cdf[-1] = 1.0
        cell = np.searchsorted(cdf, u, side="left")
        prev = np.concatenate([[0.0], cdf[:-1]])
        dens = np.asarray(self.values)[cell]
        out = breaks[cell] + (u - prev[cell]) / dens
        return out


@dataclass(frozen=True)
class RoundingParams:
    """Mixture configuration for round_combined and the solve pipelines.

    probabilities selects (kleinberg-tardos, single, descending, independent)
    in that order; b is the threshold range of the last two schemes; phi the
    single-threshold density; seed the base seed of a sampling pipeline.
    """

    b: float = 0.7
    probabilities: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    phi: PiecewiseConstantDensity = field(
        default_factory=PiecewiseConstantDensity.uniform
    )
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 < self.b <= 1.0):
            raise PreconditionError("b must be in (0, 1]")
        if len(self.probabilities) != 4 or any(p < 0 for p in self.probabilities):
            raise PreconditionError("need four nonnegative probabilities")
        if abs(sum(self.probabilities) - 1.0) > 1e-9:
            raise PreconditionError("probabilities must sum to one")


@dataclass(frozen=True)
class Labeling:
    """Label per node; produced by the rounding schemes."""

    assignment: Mapping[str, int]

    def restrict(self, nodes: tuple[str, ...]) -> "Labeling":
        return Labeling({v: self.assignment[v] for v in nodes})

    def cut(self, g: Graph) -> Cut:
        return dichromatic_edges(g, self.assignment)

    def weight(self, g: Graph) -> float:
        return cut_weight(g, self.cut(g))


def _embedding_matrix(
    inst: LabelingInstance, emb: SimplexEmbedding
) -> tuple[tuple[str, ...], np.ndarray]:
    if emb.dimension != inst.label_count:
        raise PreconditionError("embedding dimension must match label count")
    nodes = inst.graph.nodes
    return nodes, emb.matrix(nodes)


def _finish(inst: LabelingInstance, nodes, labels: np.ndarray) -> Labeling:
    assignment = {v: int(l) for v, l in zip(nodes, labels)}
    for v, l in assignment.items():
        if l not in inst.labels[v]:
            raise SolverFailureError(f"rounding assigned forbidden label {l} to {v!r}")
    for i, t in enumerate(inst.terminals):
        if assignment[t] != i:
            raise SolverFailureError(f"terminal {t!r} lost its label")
    return Labeling(assignment)


def round_kleinberg_tardos(
    inst: LabelingInstance, emb: SimplexEmbedding, seed: int
) -> Labeling:
    """Uniform-label uniform-threshold rounding; all modes."""
    nodes, x = _embedding_matrix(inst, emb)
    generator = rngmod.stream(seed, rngmod.TAG_KLEINBERG_TARDOS)
    n = len(nodes)
    labels = np.full(n, -1, dtype=np.int64)
    unassigned = np.ones(n, dtype=bool)
    remaining = n
    iterations = 0
    while remaining:
        picks = generator.integers(0, inst.label_count, size=_KT_BLOCK)
        rhos = rngmod.unit_open(generator, _KT_BLOCK)
        for i, rho in zip(picks, rhos):
            iterations += 1
            hit = unassigned & (x[:, i] >= rho)
            if hit.any():
                labels[hit] = i
                unassigned[hit] = False
                remaining = int(unassigned.sum())
                if not remaining:
                    break
        if iterations >= _KT_CAP:
            raise SolverFailureError("rounding did not converge within the iteration cap")
    return _finish(inst, nodes, labels)


def _check_threshold_mode(inst: LabelingInstance) -> None:
    if inst.mode not in (LIFTED, MULTIWAY):
        raise PreconditionError("threshold schemes need lifted or multiway mode")
    last = inst.label_count - 1
    for v in inst.graph.nodes:
        ls = inst.labels[v]
        if last not in ls and len(ls) != 1:
            raise PreconditionError(
                f"node {v!r} neither allows the fallback label nor is pinned"
            )


def _assign_by_thresholds(
    x: np.ndarray, order: np.ndarray, thetas: np.ndarray, last: int
) -> np.ndarray:
    """Process labels in `order`, each with its threshold; survivors get `last`."""
    n = x.shape[0]
    labels = np.full(n, last, dtype=np.int64)
    assigned = np.zeros(n, dtype=bool)
    for pos in range(len(order)):
        i = order[pos]
        hit = ~assigned & (x[:, i] >= thetas[pos])
        labels[hit] = i
        assigned[hit] = True
    return labels


def round_single_threshold(
    inst: LabelingInstance,
    emb: SimplexEmbedding,
    seed: int,
    phi: PiecewiseConstantDensity | None = None,
) -> Labeling:
    """One shared threshold drawn from phi, uniform label order."""
    _check_threshold_mode(inst)
    phi = phi or PiecewiseConstantDensity.uniform()
    nodes, x = _embedding_matrix(inst, emb)
    generator = rngmod.stream(seed, rngmod.TAG_SINGLE_THRESHOLD)
    theta = float(phi.sample(generator))
    k = inst.label_count - 1
    order = generator.permutation(k)
    thetas = np.full(k, theta)
    labels = _assign_by_thresholds(x, order, thetas, inst.label_count - 1)
    return _finish(inst, nodes, labels)


def round_descending_thresholds(
    inst: LabelingInstance, emb: SimplexEmbedding, seed: int, b: float = 0.7
) -> Labeling:
    """Per-label thresholds uniform on (0, b], processed largest first."""
    _check_threshold_mode(inst)
    if not (0.0 < b <= 1.0):
        raise PreconditionError("b must be in (0, 1]")
    nodes, x = _embedding_matrix(inst, emb)
    generator = rngmod.stream(seed, rngmod.TAG_DESCENDING)
    k = inst.label_count - 1
    thetas = b * rngmod.unit_open(generator, k)
    tiebreak = generator.random(k)
    order = np.lexsort((tiebreak, -thetas))
    labels = _assign_by_thresholds(x, order, thetas[order], inst.label_count - 1)
    return _finish(inst, nodes, labels)


def round_independent_thresholds(
    inst: LabelingInstance, emb: SimplexEmbedding, seed: int, b: float = 0.7
) -> Labeling:
    """Per-label thresholds uniform on (0, b], processed in uniform order."""
    _check_threshold_mode(inst)
    if not (0.0 < b <= 1.0):
        raise PreconditionError("b must be in (0, 1]")
    nodes, x = _embedding_matrix(inst, emb)
    generator = rngmod.stream(seed, rngmod.TAG_INDEPENDENT)
    k = inst.label_count - 1
    thetas = b * rngmod.unit_open(generator, k)
    order = generator.permutation(k)
    labels = _assign_by_thresholds(x, order, thetas[order], inst.label_count - 1)
    return _finish(inst, nodes, labels)


def round_combined(
    inst: LabelingInstance,
    emb: SimplexEmbedding,
    params: RoundingParams,
    seed: int,
) -> Labeling:
    """Mixture over the four schemes.

    The scheme choice draws from its own stream and the chosen scheme runs
    with the caller's seed, so probabilities (1, 0, 0, 0) reproduce
    round_kleinberg_tardos(inst, emb, seed) exactly.
    """
    u = float(rngmod.stream(seed, rngmod.TAG_SCHEME_CHOICE).random())
    acc = 0.0
    pick = 3
    for idx, p in enumerate(params.probabilities):
        acc += p
        if u < acc:
            pick = idx
            break
    if pick == 0:
        return round_kleinberg_tardos(inst, emb, seed)
    if pick == 1:
        return round_single_threshold(inst, emb, seed, params.phi)
    if pick == 2:
        return round_descending_thresholds(inst, emb, seed, params.b)
    return round_independent_thresholds(inst, emb, seed, params.b)


# ---------------------------------------------------------------------------
# cut-density estimation


@dataclass(frozen=True)
class DensityEstimate:
    scheme: str
    estimate: float
    std_error: float
    separations: int
    samples: int


def _batch_pair_thresholds(
    x: np.ndarray,
    scheme: str,
    params: RoundingParams,
    generator: np.random.Generator,
    count: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Labels of two points under `count` independent threshold draws."""
    dim = x.shape[1]
    k = dim - 1
    last = dim - 1
    if scheme == SINGLE_THRESHOLD:
        thetas = np.repeat(
            np.asarray(params.phi.sample(generator, count))[:, None], k, axis=1
        )
        order = np.argsort(generator.random((count, k)), axis=1)
    elif scheme == DESCENDING_THRESHOLDS:
        thetas_raw = params.b * rngmod.unit_open(generator, (count, k))
        tiebreak = generator.random((count, k))
        order = np.lexsort((tiebreak, -thetas_raw))
        thetas = np.take_along_axis(thetas_raw, order, axis=1)
    elif scheme == INDEPENDENT_THRESHOLDS:
        thetas_raw = params.b * rngmod.unit_open(generator, (count, k))
        order = np.argsort(generator.random((count, k)), axis=1)
        thetas = np.take_along_axis(thetas_raw, order, axis=1)
    else:
        raise PreconditionError(f"unknown threshold scheme {scheme!r}")

    out = []
    for p in range(2):
        coords = x[p][order]  # (count, k) coordinate values in processing order
        passed = coords >= thetas
        any_pass = passed.any(axis=1)
        first = passed.argmax(axis=1)
        lab = np.where(
            any_pass, np.take_along_axis(order, first[:, None], axis=1)[:, 0], last
        )
        out.append(lab)
    return out[0], out[1]


def _batch_pair_kt(
    x: np.ndarray, generator: np.random.Generator, count: int, dim: int
) -> tuple[np.ndarray, np.ndarray]:
    lab1 = np.full(count, -1, dtype=np.int64)
    lab2 = np.full(count, -1, dtype=np.int64)
    active = np.ones(count, dtype=bool)
    guard = 0
    while active.any():
        picks = generator.integers(0, dim, size=count)
        rhos = rngmod.unit_open(generator, count)
        c1 = x[0][picks]
        c2 = x[1][picks]
        hit1 = active & (lab1 < 0) & (c1 >= rhos)
        hit2 = active & (lab2 < 0) & (c2 >= rhos)
        lab1[hit1] = picks[hit1]
        lab2[hit2] = picks[hit2]
        active = (lab1 < 0) | (lab2 < 0)
        guard += 1
        if guard > 100_000:
            raise SolverFailureError("batched rounding did not converge")
    return lab1, lab2


def _batch_pair_labels(
    x: np.ndarray,
    scheme: str,
    params: RoundingParams,
    seed: int,
    count: int,
) -> tuple[np.ndarray, np.ndarray]:
    generator = rngmod.stream(seed, rngmod.TAG_DENSITY)
    if scheme == KLEINBERG_TARDOS:
        return _batch_pair_kt(x, generator, count, x.shape[1])
    if scheme in (SINGLE_THRESHOLD, DESCENDING_THRESHOLDS, INDEPENDENT_THRESHOLDS):
        return _batch_pair_thresholds(x, scheme, params, generator, count)
    if scheme == COMBINED:
        u = generator.random(count)
        edges = np.cumsum(params.probabilities)
        pick = np.searchsorted(edges, u, side="right")
        pick = np.clip(pick, 0, 3)
        lab1 = np.empty(count, dtype=np.int64)
        lab2 = np.empty(count, dtype=np.int64)
        for idx, sub in enumerate(SCHEMES):
            mask = pick == idx
            m = int(mask.sum())
            if m == 0:
                continue
            a, b = _batch_pair_labels(x, sub, params, seed + 1 + idx, m)
            lab1[mask] = a
            lab2[mask] = b
        return lab1, lab2
    raise PreconditionError(f"unknown scheme {scheme!r}")


def estimate_cut_density(
    scheme: str,
    point: np.ndarray,
    edge_type: tuple[int, int],
    epsilon: float = 1e-3,
    samples: int = 100_000,
    params: RoundingParams | None = None,
) -> DensityEstimate:
    """Monte-Carlo separation density of (point, point + eps*(e_i - e_j)).

    Runs the scheme on the two-point instance `samples` times and returns the
    separation frequency divided by epsilon, with its binomial standard
    error scaled the same way.
    """
    params = params or RoundingParams()
    point = np.asarray(point, dtype=np.float64)
    i, j = edge_type
    dim = point.shape[0]
    if dim < 2:
        raise PreconditionError("points need at least two coordinates")
    if not (0 <= i < dim and 0 <= j < dim) or i == j:
        raise PreconditionError("edge type must name two distinct coordinates")
    if np.any(point < 0) or abs(float(point.sum()) - 1.0) > 1e-9:
        raise PreconditionError("point must lie on the simplex")
    if epsilon <= 0 or point[j] < epsilon:
        raise PreconditionError("perturbation leaves the simplex")
    if samples < 1:
        raise PreconditionError("need at least one sample")
    other = point.copy()
    other[i] += epsilon
    other[j] -= epsilon
    x = np.stack([point, other])
    lab1, lab2 = _batch_pair_labels(x, scheme, params, params.seed, samples)
    separations = int((lab1 != lab2).sum())
    p_hat = separations / samples
    estimate = p_hat / epsilon
    std_error = float(np.sqrt(p_hat * (1.0 - p_hat) / samples)) / epsilon
    return DensityEstimate(scheme, estimate, std_error, separations, samples)
