"""Weight-preserving reductions between cut variants and related problems.

Each builder returns a Reduction record holding the original problem, the
reduced problem, and enough bookkeeping to map solutions in both
directions.  All four reductions preserve solution weight exactly, so they
preserve optimal values and approximation ratios:

* hitting set -> fixed-to-single on a unit star (cut edges = chosen elements);
* fixed-to-single -> some-to-single: adjoin the fixed node to every set and
  add the singleton set {fixed}; the attacker aimed at that singleton is
  forced back into the original set;
* fixed-to-single -> some-to-all: one fresh isolated node per set keeps the
  wholesale demands cheap to satisfy, while the enlarged last set forces the
  attackers aimed at it to reproduce the original representatives (needs
  q >= 2 so the last set can attack each T_j with someone else's isolated
  node);
* some-to-some <-> Steiner multicut: separating some pair of T_i u T_j is
  the same as not leaving the union whole, and duplicating each group makes
  the converse direction an identity on cuts.

Solution maps validate what they produce; mapping garbage raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InstanceValidationError, PreconditionError
from .graph import Cut, Graph, components
from .variants import (
    FIXED_TO_SINGLE,
    SOME_TO_ALL,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    CandidateFamily,
    CutSolution,
    RepresentativeChoice,
    VariantInstance,
    _finish,
)


@dataclass(frozen=True)
class HittingSetInstance:
    """Universe elements and the subsets each of which must be hit."""

    universe: tuple[str, ...]
    subsets: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        if len(set(self.universe)) != len(self.universe):
            raise InstanceValidationError("universe elements must be distinct")
        if not self.subsets:
            raise InstanceValidationError("need at least one subset")
        pool = set(self.universe)
        for i, s in enumerate(self.subsets):
            if not s:
                raise InstanceValidationError(f"subset {i} is empty")
            if not s <= pool:
                raise InstanceValidationError(f"subset {i} leaves the universe")

    @staticmethod
    def build(
        universe: Iterable[str], subsets: Iterable[Iterable[str]]
    ) -> "HittingSetInstance":
        return HittingSetInstance(
            tuple(universe), tuple(frozenset(s) for s in subsets)
        )


@dataclass(frozen=True)
class SteinerMulticutInstance:
    """Cut every group into at least two components."""

    graph: Graph
    groups: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        for i, x in enumerate(self.groups):
            if not x:
                raise InstanceValidationError(f"group {i} is empty")
            self.graph.check_nodes(x)

    @staticmethod
    def build(graph: Graph, groups: Iterable[Iterable[str]]) -> "SteinerMulticutInstance":
        return SteinerMulticutInstance(graph, tuple(frozenset(x) for x in groups))


@dataclass(frozen=True)
class Reduction:
    """A reduced problem plus weight-preserving solution maps.

    forward_solution carries an original-side solution to the reduced side;
    backward_solution goes the other way.  Both directions preserve weight.
    """

    kind: str
    original: object
    reduced: object
    data: Mapping[str, object] = field(default_factory=dict)

    def forward_solution(self, solution):
        return _FORWARD[self.kind](self, solution)

    def backward_solution(self, solution):
        return _BACKWARD[self.kind](self, solution)


def _fresh_names(taken: set[str], base: str, count: int) -> list[str]:
    out = []
    for i in range(count):
        name = f"{base}{i}"
        while name in taken:
            name = "_" + name
        taken.add(name)
        out.append(name)
    return out


def _split_pair(
    part_assignment: Mapping[str, int], a_set: frozenset[str], b_set: frozenset[str]
) -> tuple[str, str]:
    """Lex-least (a, b) in a_set x b_set lying in different components."""
    for a in sorted(a_set):
        for b in sorted(b_set):
            if part_assignment[a] != part_assignment[b]:
                return a, b
    raise PreconditionError("no separated pair; the cut does not split the union")


# ---------------------------------------------------------------------------
# hitting set -> fixed-to-single


def hitting_set_to_fixed_to_single(hs: HittingSetInstance) -> Reduction:
    """Unit star: hub = fixed node, one leaf per element, subsets as sets.

    Cutting leaf edges is choosing elements; a set's demand is met exactly
    when one of its elements' edges is cut, i.e. when the set is hit.
    """
    taken = set(hs.universe)
    hub = _fresh_names(taken, "_hub", 1)[0]
    g = Graph.build(
        (hub,) + hs.universe, [(hub, u, 1.0) for u in hs.universe]
    )
    inst = VariantInstance(
        FIXED_TO_SINGLE, g, CandidateFamily(hs.subsets), fixed=hub
    )
    return Reduction(
        "hitting-set->fixed-to-single", hs, inst, {"hub": hub}
    )


def _hs_forward(red: Reduction, hitting_set: Iterable[str]) -> CutSolution:
    hs: HittingSetInstance = red.original  # type: ignore[assignment]
    inst: VariantInstance = red.reduced  # type: ignore[assignment]
    chosen = frozenset(hitting_set)
    if not chosen <= set(hs.universe):
        raise PreconditionError("hitting set leaves the universe")
    position = {u: i for i, u in enumerate(hs.universe)}
    single: dict[int, str] = {}
    for j, s in enumerate(hs.subsets):
        hit = sorted(s & chosen)
        if not hit:
            raise PreconditionError(f"subset {j} is not hit")
        single[j] = hit[0]
    cut = frozenset(position[u] for u in chosen)
    return _finish(inst, cut, RepresentativeChoice(single=single))


def _hs_backward(red: Reduction, sol: CutSolution) -> frozenset[str]:
    hs: HittingSetInstance = red.original  # type: ignore[assignment]
    chosen = frozenset(hs.universe[e] for e in sol.cut)
    for j, s in enumerate(hs.subsets):
        if not s & chosen:
            raise PreconditionError(f"cut does not hit subset {j}")
    return chosen


# ---------------------------------------------------------------------------
# fixed-to-single -> some-to-single


def fixed_to_single_to_some_to_single(inst: VariantInstance) -> Reduction:
    """Adjoin the fixed node to every set and add the singleton {fixed}.

    The singleton's representative must be the fixed node, so the attacker
    each original set aims at it is a set member separated from the fixed
    node: exactly the original demand.
    """
    if inst.variant != FIXED_TO_SINGLE:
        raise PreconditionError("expects a fixed-to-single instance")
    s = inst.fixed
    assert s is not None
    sets = tuple(t | {s} for t in inst.family.sets) + (frozenset([s]),)
    reduced = VariantInstance(SOME_TO_SINGLE, inst.graph, CandidateFamily(sets))
    return Reduction("fixed-to-single->some-to-single", inst, reduced, {})


def _fts_ss_forward(red: Reduction, sol: CutSolution) -> CutSolution:
    inst: VariantInstance = red.original  # type: ignore[assignment]
    reduced: VariantInstance = red.reduced  # type: ignore[assignment]
    s = inst.fixed
    assert s is not None
    q = inst.q
    singles = dict(sol.reps.single_map())
    single = {j: singles[j] for j in range(q)}
    single[q] = s
    pairs: dict[tuple[int, int], str] = {}
    for i in range(q + 1):
        for j in range(q + 1):
            if i == j:
                continue
            pairs[(i, j)] = singles[i] if j == q else s
    return _finish(reduced, sol.cut, RepresentativeChoice(single=single, pairs=pairs))


def _fts_ss_backward(red: Reduction, sol: CutSolution) -> CutSolution:
    inst: VariantInstance = red.original  # type: ignore[assignment]
    q = inst.q
    pairs = sol.reps.pairs_map()
    single = {j: pairs[(j, q)] for j in range(q)}
    return _finish(inst, sol.cut, RepresentativeChoice(single=single))


# ---------------------------------------------------------------------------
# fixed-to-single -> some-to-all


def fixed_to_single_to_some_to_all(inst: VariantInstance) -> Reduction:
    """Pad each set with a fresh isolated node; gather them with the fixed.

    Isolated nodes keep all demands among the padded sets free, and the
    attacker aimed by set j at the gathered last set cannot be j's own
    isolated node (it sits inside the target), so it is an original member
    separated from the fixed node.  Needs q >= 2: the last set answers set j
    with another set's isolated node.
    """
    if inst.variant != FIXED_TO_SINGLE:
        raise PreconditionError("expects a fixed-to-single instance")
    if inst.q < 2:
        raise PreconditionError("reduction to some-to-all needs at least two sets")
    s = inst.fixed
    assert s is not None
    g = inst.graph
    taken = set(g.nodes)
    aux = _fresh_names(taken, "_aux", inst.q)
    big = Graph(g.nodes + tuple(aux), g.edges)
    sets = tuple(
        t | {aux[i]} for i, t in enumerate(inst.family.sets)
    ) + (frozenset([s, *aux]),)
    reduced = VariantInstance(SOME_TO_ALL, big, CandidateFamily(sets))
    return Reduction(
        "fixed-to-single->some-to-all", inst, reduced, {"aux": tuple(aux)}
    )


def _fts_sa_forward(red: Reduction, sol: CutSolution) -> CutSolution:
    inst: VariantInstance = red.original  # type: ignore[assignment]
    reduced: VariantInstance = red.reduced  # type: ignore[assignment]
    aux: tuple[str, ...] = red.data["aux"]  # type: ignore[assignment]
    q = inst.q
    singles = sol.reps.single_map()
    pairs: dict[tuple[int, int], str] = {}
    for i in range(q):
        for j in range(q):
            if i != j:
                pairs[(i, j)] = aux[i]
        pairs[(i, q)] = singles[i]
        pairs[(q, i)] = aux[(i + 1) % q]
    return _finish(reduced, sol.cut, RepresentativeChoice(pairs=pairs))


def _fts_sa_backward(red: Reduction, sol: CutSolution) -> CutSolution:
    inst: VariantInstance = red.original  # type: ignore[assignment]
    q = inst.q
    pairs = sol.reps.pairs_map()
    single = {j: pairs[(j, q)] for j in range(q)}
    # identical edge list, so the cut carries over index for index
    return _finish(inst, sol.cut, RepresentativeChoice(single=single))


# ---------------------------------------------------------------------------
# some-to-some <-> Steiner multicut


def some_to_some_to_steiner(inst: VariantInstance) -> Reduction:
    """One Steiner group per set pair: the union T_i u T_j.

    A cut splits the union exactly when some cross pair is separated, which
    is the some-to-some demand for that pair of sets.
    """
    if inst.variant != SOME_TO_SOME:
        raise PreconditionError("expects a some-to-some instance")
    q = inst.q
    groups = tuple(
        inst.family.sets[i] | inst.family.sets[j]
        for i in range(q)
        for j in range(i + 1, q)
    )
    reduced = SteinerMulticutInstance(inst.graph, groups)
    return Reduction("some-to-some->steiner-multicut", inst, reduced, {})


def _ss_st_forward(red: Reduction, sol: CutSolution) -> Cut:
    reduced: SteinerMulticutInstance = red.reduced  # type: ignore[assignment]
    cut = reduced.graph.check_cut(sol.cut)
    part = components(reduced.graph, cut)
    for i, x in enumerate(reduced.groups):
        if len({part.assignment[v] for v in x}) < 2:
            raise PreconditionError(f"cut leaves group {i} whole")
    return cut


def _ss_st_backward(red: Reduction, cut: Cut) -> CutSolution:
    inst: VariantInstance = red.original  # type: ignore[assignment]
    part = components(inst.graph, inst.graph.check_cut(cut))
    q = inst.q
    pairs: dict[tuple[int, int], str] = {}
    for i in range(q):
        for j in range(i + 1, q):
            a, b = _split_pair(part.assignment, inst.family.sets[i], inst.family.sets[j])
            pairs[(i, j)], pairs[(j, i)] = a, b
    return _finish(inst, frozenset(cut), RepresentativeChoice(pairs=pairs))


def steiner_to_some_to_some(st: SteinerMulticutInstance) -> Reduction:
    """Duplicate every group into two candidate sets.

    The twin-set demand forces each group to split; demands between copies
    of different groups come for free, because a cut separating something
    inside each union always separates some cross pair.
    """
    if not st.groups:
        raise PreconditionError("need at least one group")
    sets = tuple(x for x in st.groups for _ in range(2))
    reduced = VariantInstance(SOME_TO_SOME, st.graph, CandidateFamily(sets))
    return Reduction("steiner-multicut->some-to-some", st, reduced, {})


def _st_ss_forward(red: Reduction, cut: Cut) -> CutSolution:
    reduced: VariantInstance = red.reduced  # type: ignore[assignment]
    part = components(reduced.graph, reduced.graph.check_cut(cut))
    q = reduced.q
    pairs: dict[tuple[int, int], str] = {}
    for i in range(q):
        for j in range(i + 1, q):
            a, b = _split_pair(
                part.assignment, reduced.family.sets[i], reduced.family.sets[j]
            )
            pairs[(i, j)], pairs[(j, i)] = a, b
    return _finish(reduced, frozenset(cut), RepresentativeChoice(pairs=pairs))


def _st_ss_backward(red: Reduction, sol: CutSolution) -> Cut:
    st: SteinerMulticutInstance = red.original  # type: ignore[assignment]
    cut = st.graph.check_cut(sol.cut)
    part = components(st.graph, cut)
    for i, x in enumerate(st.groups):
        if len({part.assignment[v] for v in x}) < 2:
            raise PreconditionError(f"cut leaves group {i} whole")
    return cut


_FORWARD = {
    "hitting-set->fixed-to-single": _hs_forward,
    "fixed-to-single->some-to-single": _fts_ss_forward,
    "fixed-to-single->some-to-all": _fts_sa_forward,
    "some-to-some->steiner-multicut": _ss_st_forward,
    "steiner-multicut->some-to-some": _st_ss_forward,
}

_BACKWARD = {
    "hitting-set->fixed-to-single": _hs_backward,
    "fixed-to-single->some-to-single": _fts_ss_backward,
    "fixed-to-single->some-to-all": _fts_sa_backward,
    "some-to-some->steiner-multicut": _ss_st_backward,
    "steiner-multicut->some-to-some": _st_ss_backward,
}
