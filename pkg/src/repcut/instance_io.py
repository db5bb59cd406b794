"""Line-oriented v1 file formats for instances and solutions.

Four formats, each starting with an exact header line:

    repcut instance v1      variant instances (node/edge/set/fixed/meta)
    repcut solution v1      cuts plus representatives (weight/cut-edge/rep/
                            pair-rep, free-form meta)
    repcut hitting-set v1   element/subset/meta
    repcut steiner v1       node/edge/group/meta

Directives are whitespace-separated tokens, one per line; blank lines and
lines starting with '#' are skipped on input and never produced on output.
Unknown directives are rejected.  Writers emit a canonical ordering and
repr() floats, so parse(write(x)) reproduces x exactly and write(parse(t))
is byte-stable for canonical t.  Node ids must be whitespace-free to be
serializable.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import StructuralError
from .graph import Cut, Graph
from .reductions import HittingSetInstance, SteinerMulticutInstance
from .variants import (
    FIXED_TO_SINGLE,
    VARIANTS,
    CandidateFamily,
    CutSolution,
    RepresentativeChoice,
    VariantInstance,
)

INSTANCE_HEADER = "repcut instance v1"
SOLUTION_HEADER = "repcut solution v1"
HITTING_SET_HEADER = "repcut hitting-set v1"
STEINER_HEADER = "repcut steiner v1"


def _check_token(token: str, what: str) -> str:
    if not token or any(c.isspace() for c in token) or token.startswith("#"):
        raise StructuralError(f"{what} {token!r} is not serializable")
    return token


def _lines(text: str, header: str) -> list[list[str]]:
    raw = text.splitlines()
    if not raw or raw[0].strip() != header:
        raise StructuralError(f"expected header {header!r}")
    out = []
    for ln in raw[1:]:
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        out.append(s.split())
    return out


def _parse_weight(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise StructuralError(f"bad weight {token!r} in {where}") from None


def _parse_meta(parts: list[str]) -> tuple[str, str]:
    if len(parts) < 3:
        raise StructuralError("meta needs a key and a value")
    return parts[1], " ".join(parts[2:])


# ---------------------------------------------------------------------------
# variant instances


def write_instance(inst: VariantInstance, meta: Mapping[str, str] | None = None) -> str:
    out = [INSTANCE_HEADER, f"variant {inst.variant}"]
    for v in inst.graph.nodes:
        out.append(f"node {_check_token(v, 'node id')}")
    for u, v, w in inst.graph.edges:
        out.append(f"edge {u} {v} {w!r}")
    for i, t in enumerate(inst.family.sets):
        out.append(f"set {i} " + " ".join(sorted(t)))
    if inst.fixed is not None:
        out.append(f"fixed {inst.fixed}")
    for k in sorted(meta or {}):
        out.append(f"meta {_check_token(k, 'meta key')} {meta[k]}")
    return "\n".join(out) + "\n"


def parse_instance(text: str) -> tuple[VariantInstance, dict[str, str]]:
    variant: str | None = None
    nodes: list[str] = []
    edges: list[tuple[str, str, float]] = []
    sets: dict[int, frozenset[str]] = {}
    fixed: str | None = None
    meta: dict[str, str] = {}
    for parts in _lines(text, INSTANCE_HEADER):
        key = parts[0]
        if key == "variant":
            if variant is not None or len(parts) != 2:
                raise StructuralError("variant must appear exactly once")
            if parts[1] not in VARIANTS:
                raise StructuralError(f"unknown variant {parts[1]!r}")
            variant = parts[1]
        elif key == "node":
            if len(parts) != 2:
                raise StructuralError("node takes exactly one id")
            nodes.append(parts[1])
        elif key == "edge":
            if len(parts) != 4:
                raise StructuralError("edge takes two ids and a weight")
            edges.append((parts[1], parts[2], _parse_weight(parts[3], "edge")))
        elif key == "set":
            if len(parts) < 3:
                raise StructuralError("set takes an index and at least one member")
            try:
                idx = int(parts[1])
            except ValueError:
                raise StructuralError(f"bad set index {parts[1]!r}") from None
            if idx in sets:
                raise StructuralError(f"duplicate set index {idx}")
            sets[idx] = frozenset(parts[2:])
        elif key == "fixed":
            if fixed is not None or len(parts) != 2:
                raise StructuralError("fixed must appear at most once, with one id")
            fixed = parts[1]
        elif key == "meta":
            k, v = _parse_meta(parts)
            meta[k] = v
        else:
            raise StructuralError(f"unknown directive {key!r} in instance file")
    if variant is None:
        raise StructuralError("missing variant line")
    if sorted(sets) != list(range(len(sets))):
        raise StructuralError("set indices must be 0..q-1 with no gaps")
    family = CandidateFamily(tuple(sets[i] for i in range(len(sets))))
    graph = Graph.build(nodes, edges)
    return VariantInstance(variant, graph, family, fixed), meta


# ---------------------------------------------------------------------------
# solutions


def write_solution(
    sol: CutSolution, meta: Sequence[tuple[str, str]] = ()
) -> str:
    out = [SOLUTION_HEADER]
    for k, v in meta:
        out.append(f"meta {_check_token(k, 'meta key')} {v}")
    out.append(f"weight {sol.weight!r}")
    for e in sorted(sol.cut):
        out.append(f"cut-edge {e}")
    for i in sorted(sol.reps.single_map()):
        out.append(f"rep {i} {sol.reps.single_map()[i]}")
    for i, j in sorted(sol.reps.pairs_map()):
        out.append(f"pair-rep {i} {j} {sol.reps.pairs_map()[(i, j)]}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> tuple[CutSolution, dict[str, str]]:
    """Read a solution file; the certificate is left empty (validation
    recomputes separation from scratch anyway)."""
    weight: float | None = None
    cut: set[int] = set()
    single: dict[int, str] = {}
    pairs: dict[tuple[int, int], str] = {}
    meta: dict[str, str] = {}
    for parts in _lines(text, SOLUTION_HEADER):
        key = parts[0]
        if key == "weight":
            if weight is not None or len(parts) != 2:
                raise StructuralError("weight must appear exactly once")
            weight = _parse_weight(parts[1], "solution")
        elif key == "cut-edge":
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise StructuralError("cut-edge takes one integer index")
            cut.add(int(parts[1]))
        elif key == "rep":
            if len(parts) != 3 or not parts[1].isdigit():
                raise StructuralError("rep takes a set index and a node id")
            single[int(parts[1])] = parts[2]
        elif key == "pair-rep":
            if len(parts) != 4 or not (parts[1].isdigit() and parts[2].isdigit()):
                raise StructuralError("pair-rep takes two set indices and a node id")
            pairs[(int(parts[1]), int(parts[2]))] = parts[3]
        elif key == "meta":
            k, v = _parse_meta(parts)
            meta[k] = v
        else:
            raise StructuralError(f"unknown directive {key!r} in solution file")
    if weight is None:
        raise StructuralError("missing weight line")
    reps = RepresentativeChoice(
        single=single if single else None, pairs=pairs if pairs else None
    )
    return CutSolution(frozenset(cut), reps, weight), meta


# ---------------------------------------------------------------------------
# hitting set


def write_hitting_set(hs: HittingSetInstance, meta: Mapping[str, str] | None = None) -> str:
    out = [HITTING_SET_HEADER]
    for u in hs.universe:
        out.append(f"element {_check_token(u, 'element')}")
    for i, s in enumerate(hs.subsets):
        out.append(f"subset {i} " + " ".join(sorted(s)))
    for k in sorted(meta or {}):
        out.append(f"meta {_check_token(k, 'meta key')} {meta[k]}")
    return "\n".join(out) + "\n"


def parse_hitting_set(text: str) -> tuple[HittingSetInstance, dict[str, str]]:
    universe: list[str] = []
    subsets: dict[int, frozenset[str]] = {}
    meta: dict[str, str] = {}
    for parts in _lines(text, HITTING_SET_HEADER):
        key = parts[0]
        if key == "element":
            if len(parts) != 2:
                raise StructuralError("element takes exactly one id")
            universe.append(parts[1])
        elif key == "subset":
            if len(parts) < 3:
                raise StructuralError("subset takes an index and at least one member")
            try:
                idx = int(parts[1])
            except ValueError:
                raise StructuralError(f"bad subset index {parts[1]!r}") from None
            if idx in subsets:
                raise StructuralError(f"duplicate subset index {idx}")
            subsets[idx] = frozenset(parts[2:])
        elif key == "meta":
            k, v = _parse_meta(parts)
            meta[k] = v
        else:
            raise StructuralError(f"unknown directive {key!r} in hitting-set file")
    if sorted(subsets) != list(range(len(subsets))):
        raise StructuralError("subset indices must be 0..k-1 with no gaps")
    hs = HittingSetInstance(
        tuple(universe), tuple(subsets[i] for i in range(len(subsets)))
    )
    return hs, meta


# ---------------------------------------------------------------------------
# Steiner multicut


def write_steiner(
    st: SteinerMulticutInstance, meta: Mapping[str, str] | None = None
) -> str:
    out = [STEINER_HEADER]
    for v in st.graph.nodes:
        out.append(f"node {_check_token(v, 'node id')}")
    for u, v, w in st.graph.edges:
        out.append(f"edge {u} {v} {w!r}")
    for i, x in enumerate(st.groups):
        out.append(f"group {i} " + " ".join(sorted(x)))
    for k in sorted(meta or {}):
        out.append(f"meta {_check_token(k, 'meta key')} {meta[k]}")
    return "\n".join(out) + "\n"


def parse_steiner(text: str) -> tuple[SteinerMulticutInstance, dict[str, str]]:
    nodes: list[str] = []
    edges: list[tuple[str, str, float]] = []
    groups: dict[int, frozenset[str]] = {}
    meta: dict[str, str] = {}
    for parts in _lines(text, STEINER_HEADER):
        key = parts[0]
        if key == "node":
            if len(parts) != 2:
                raise StructuralError("node takes exactly one id")
            nodes.append(parts[1])
        elif key == "edge":
            if len(parts) != 4:
                raise StructuralError("edge takes two ids and a weight")
            edges.append((parts[1], parts[2], _parse_weight(parts[3], "edge")))
        elif key == "group":
            if len(parts) < 3:
                raise StructuralError("group takes an index and at least one member")
            try:
                idx = int(parts[1])
            except ValueError:
                raise StructuralError(f"bad group index {parts[1]!r}") from None
            if idx in groups:
                raise StructuralError(f"duplicate group index {idx}")
            groups[idx] = frozenset(parts[2:])
        elif key == "meta":
            k, v = _parse_meta(parts)
            meta[k] = v
        else:
            raise StructuralError(f"unknown directive {key!r} in steiner file")
    if sorted(groups) != list(range(len(groups))):
        raise StructuralError("group indices must be 0..k-1 with no gaps")
    st = SteinerMulticutInstance(
        Graph.build(nodes, edges), tuple(groups[i] for i in range(len(groups)))
    )
    return st, meta


def sniff_format(text: str) -> str:
    """Return which v1 header the text carries ('instance', 'solution',
    'hitting-set', 'steiner')."""
    first = text.splitlines()[0].strip() if text.splitlines() else ""
    table = {
        INSTANCE_HEADER: "instance",
        SOLUTION_HEADER: "solution",
        HITTING_SET_HEADER: "hitting-set",
        STEINER_HEADER: "steiner",
    }
    if first not in table:
        raise StructuralError(f"unrecognized header {first!r}")
    return table[first]
