"""End-to-end LP-plus-rounding pipelines.

solve_multiway_cut: relax a terminal-separation instance on the simplex,
axis-align the embedding, then round `samples` times with the configured
mixture and keep the lightest labeling.  solve_lifted_cut does the same for
a general lifted instance.  Both report the relaxation values next to the
rounded weight; the cut-comparable LP value is a lower bound on the optimum.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import PreconditionError
from .graph import Cut, Graph, cut_weight
from .relax import (
    LIFTED,
    MULTIWAY,
    LabelingInstance,
    align_instance,
    solve_relaxation,
    uniform_labels,
)
from .rng import child_seeds
from .rounding import Labeling, RoundingParams, round_combined


@dataclass(frozen=True)
class RoundedSolveResult:
    labeling: Labeling
    cut: Cut
    weight: float
    lp_raw: float
    lp_cut_value: float
    samples: int


def _best_rounding(
    inst: LabelingInstance,
    params: RoundingParams,
    samples: int,
    threads: int,
) -> tuple[RoundedSolveResult, LabelingInstance]:
    if samples < 1:
        raise PreconditionError("need at least one rounding sample")
    emb, raw, half = solve_relaxation(inst)
    aligned_inst, aligned = align_instance(inst, emb)
    seeds = child_seeds(params.seed, samples)
    original = inst.graph

    def one(seed: int) -> tuple[float, Labeling]:
        full = round_combined(aligned_inst, aligned.embedding, params, int(seed))
        restricted = full.restrict(original.nodes)
        return restricted.weight(original), restricted

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, seeds))
    else:
        outcomes = [one(s) for s in seeds]
    best_w, best_l = outcomes[0]
    for w, l in outcomes[1:]:
        if w < best_w - 1e-12:
            best_w, best_l = w, l
    cut = best_l.cut(original)
    result = RoundedSolveResult(best_l, cut, cut_weight(original, cut), raw, half, samples)
    return result, aligned_inst


def solve_multiway_cut(
    g: Graph,
    terminals: tuple[str, ...],
    params: RoundingParams | None = None,
    samples: int = 32,
    threads: int = 1,
) -> RoundedSolveResult:
    """Approximate minimum multiway cut separating the terminals pairwise."""
    params = params or RoundingParams()
    if len(terminals) < 2:
        raise PreconditionError("need at least two terminals")
    if len(set(terminals)) != len(terminals):
        raise PreconditionError("terminals must be distinct")
    g.check_nodes(terminals)
    k = len(terminals)
    labels = uniform_labels(g, k, {t: i for i, t in enumerate(terminals)})
    inst = LabelingInstance(g, k, labels, tuple(terminals), MULTIWAY)
    result, _ = _best_rounding(inst, params, samples, threads)
    # terminals keep distinct labels, so the dichromatic cut separates them
    for i, t in enumerate(terminals):
        if result.labeling.assignment[t] != i:
            raise PreconditionError("terminal lost its label")  # unreachable
    return result


def solve_lifted_cut(
    inst: LabelingInstance,
    params: RoundingParams | None = None,
    samples: int = 32,
    threads: int = 1,
) -> RoundedSolveResult:
    """Relax and round a lifted instance; weight >= the cut-comparable value."""
    params = params or RoundingParams()
    if inst.mode != LIFTED:
        raise PreconditionError("solve_lifted_cut expects a lifted-mode instance")
    result, _ = _best_rounding(inst, params, samples, threads)
    return result
