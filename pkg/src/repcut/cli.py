"""Command line interface.

Subcommands: solve, validate, reduce, oracle, audit, lp-dump.  Reports are
written to stdout and are byte-identical for identical inputs and seeds;
wall-clock timing goes to stderr so it never perturbs the report body.

Exit codes: 0 success, 1 failed validation, 2 usage or parse error,
3 infeasible instance, 4 refusal because a size cap or oracle budget was
exceeded.  The thread count defaults to the REPCUT_THREADS environment
variable when the flag is absent.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from typing import Sequence

from . import instance_io
from .errors import (
    BudgetExceededError,
    CapExceededError,
    InfeasibleInstanceError,
    InstanceValidationError,
    PreconditionError,
    StructuralError,
)
from .graph import components, contract
from .lp import dump_lp_format
from .oracle import OracleLimits, exact_solve, exact_solve_edge_subsets
from .reductions import (
    fixed_to_single_to_some_to_all,
    fixed_to_single_to_some_to_single,
    hitting_set_to_fixed_to_single,
    some_to_some_to_steiner,
    steiner_to_some_to_some,
)
from .relax import LIFTED, MULTIWAY, LabelingInstance, build_lift_lp, uniform_labels
from .rounding import PiecewiseConstantDensity, RoundingParams
from .variants import (
    ALL_TO_ALL,
    FIXED_TO_SINGLE,
    SINGLE_TO_ALL,
    SINGLE_TO_SINGLE,
    SOME_TO_ALL,
    SOME_TO_SINGLE,
    SOME_TO_SOME,
    CutSolution,
    VariantInstance,
    check_feasibility,
    solve_all_to_all,
    solve_fixed_to_single_fixed_q,
    solve_single_to_all_2approx,
    solve_single_to_all_fixed_q,
    solve_single_to_single_fixed_q,
    solve_single_to_single_gh,
    solve_single_to_single_tree,
    solve_some_to_all_fixed_q,
    solve_some_to_single_fixed_q,
    solve_some_to_some_fixed_q,
    validate_solution,
)

_AUTO = {
    ALL_TO_ALL: "contract-multiway",
    SINGLE_TO_ALL: "isolating-union",
    SINGLE_TO_SINGLE: "gomory-hu",
    FIXED_TO_SINGLE: "fixed-q",
    SOME_TO_SINGLE: "fixed-q",
    SOME_TO_SOME: "fixed-q",
    SOME_TO_ALL: "fixed-q",
}

_ALGORITHMS = (
    "auto",
    "tree-greedy",
    "gomory-hu",
    "contract-multiway",
    "isolating-union",
    "fixed-q",
)

_USES_RNG = {"contract-multiway", "fixed-q"}


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise StructuralError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_params(args) -> RoundingParams:
    b = 0.7
    probabilities = (0.25, 0.25, 0.25, 0.25)
    phi = PiecewiseConstantDensity.uniform()
    if getattr(args, "params_file", None):
        try:
            raw = json.loads(_read(args.params_file))
        except json.JSONDecodeError as exc:
            raise StructuralError(f"bad params file: {exc}") from None
        if not isinstance(raw, dict):
            raise StructuralError("params file must hold a JSON object")
        unknown = set(raw) - {"b", "probabilities", "phi"}
        if unknown:
            raise StructuralError(f"unknown params keys: {sorted(unknown)}")
        b = float(raw.get("b", b))
        if "probabilities" in raw:
            probabilities = tuple(float(x) for x in raw["probabilities"])
        if "phi" in raw:
            spec = raw["phi"]
            if not isinstance(spec, dict) or set(spec) != {"breaks", "values"}:
                raise StructuralError("phi needs exactly the keys breaks and values")
            phi = PiecewiseConstantDensity(
                tuple(float(x) for x in spec["breaks"]),
                tuple(float(x) for x in spec["values"]),
            )
    return RoundingParams(b=b, probabilities=probabilities, phi=phi, seed=args.seed)


def _thread_count(args) -> int:
    if getattr(args, "threads", None) is not None:
        return args.threads
    env = os.environ.get("REPCUT_THREADS", "")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise StructuralError(f"REPCUT_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise StructuralError("REPCUT_THREADS must be at least 1")
        return n
    return 1


def _solve_with(
    inst: VariantInstance, algorithm: str, args
) -> tuple[CutSolution, str]:
    """Run the requested algorithm; returns (solution, resolved name)."""
    name = _AUTO[inst.variant] if algorithm == "auto" else algorithm
    params = _load_params(args)
    samples = args.samples
    threads = _thread_count(args)
    if name == "tree-greedy":
        return solve_single_to_single_tree(inst), name
    if name == "gomory-hu":
        return solve_single_to_single_gh(inst), name
    if name == "contract-multiway":
        return solve_all_to_all(inst, params, samples, threads), name
    if name == "isolating-union":
        return solve_single_to_all_2approx(inst, mode=args.mode), name
    if name == "fixed-q":
        if inst.variant == SINGLE_TO_ALL:
            return solve_single_to_all_fixed_q(inst, params, samples, threads=threads), name
        if inst.variant == SINGLE_TO_SINGLE:
            return solve_single_to_single_fixed_q(inst, params, samples, threads=threads), name
        if inst.variant == FIXED_TO_SINGLE:
            return solve_fixed_to_single_fixed_q(inst), name
        if inst.variant == SOME_TO_SINGLE:
            return solve_some_to_single_fixed_q(inst, params, samples, threads=threads), name
        if inst.variant == SOME_TO_SOME:
            return solve_some_to_some_fixed_q(inst, params, samples, threads=threads), name
        if inst.variant == SOME_TO_ALL:
            return solve_some_to_all_fixed_q(inst, params, samples, threads=threads), name
        raise PreconditionError(f"fixed-q does not handle {inst.variant}")
    raise PreconditionError(f"algorithm {name!r} does not handle {inst.variant}")


def _solution_meta(inst: VariantInstance, name: str, args) -> list[tuple[str, str]]:
    meta = [("variant", inst.variant), ("algorithm", name)]
    if name == "isolating-union":
        meta.append(("mode", args.mode))
    if name in _USES_RNG:
        meta.append(("seed", str(args.seed)))
        meta.append(("samples", str(args.samples)))
    return meta


def _cmd_solve(args) -> int:
    inst, _ = instance_io.parse_instance(_read(args.instance))
    t0 = time.perf_counter()
    sol, name = _solve_with(inst, args.algorithm, args)
    dt = time.perf_counter() - t0
    report = instance_io.write_solution(sol, _solution_meta(inst, name, args))
    sys.stdout.write(report)
    if args.solution_out:
        _write(args.solution_out, report)
    print(f"wall-time {dt:.3f}s", file=sys.stderr)
    return 0


def _cmd_validate(args) -> int:
    inst, _ = instance_io.parse_instance(_read(args.instance))
    sol, _ = instance_io.parse_solution(_read(args.solution))
    verdict = validate_solution(inst, sol)
    if verdict.ok:
        print(f"valid weight {sol.weight!r}")
        return 0
    print(f"invalid: {verdict.reason}")
    return 1


_TARGETS = ("fixed-to-single", "some-to-single", "some-to-all", "steiner", "some-to-some")


def _cmd_reduce(args) -> int:
    text = _read(args.input)
    kind = instance_io.sniff_format(text)
    if kind == "hitting-set":
        if args.target != "fixed-to-single":
            raise StructuralError("hitting-set inputs reduce to fixed-to-single")
        hs, _ = instance_io.parse_hitting_set(text)
        red = hitting_set_to_fixed_to_single(hs)
        out = instance_io.write_instance(red.reduced)
    elif kind == "steiner":
        if args.target != "some-to-some":
            raise StructuralError("steiner inputs reduce to some-to-some")
        st, _ = instance_io.parse_steiner(text)
        red = steiner_to_some_to_some(st)
        out = instance_io.write_instance(red.reduced)
    elif kind == "instance":
        inst, _ = instance_io.parse_instance(text)
        if args.target == "some-to-single":
            red = fixed_to_single_to_some_to_single(inst)
            out = instance_io.write_instance(red.reduced)
        elif args.target == "some-to-all":
            red = fixed_to_single_to_some_to_all(inst)
            out = instance_io.write_instance(red.reduced)
        elif args.target == "steiner":
            red = some_to_some_to_steiner(inst)
            out = instance_io.write_steiner(red.reduced)
        else:
            raise StructuralError(
                f"no reduction from a variant instance to {args.target!r}"
            )
    else:
        raise StructuralError(f"cannot reduce a {kind} file")
    if args.out:
        _write(args.out, out)
    else:
        sys.stdout.write(out)
    if args.map:
        payload = {"kind": red.kind, "data": {k: list(v) if isinstance(v, tuple) else v for k, v in red.data.items()}}
        _write(args.map, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _cmd_oracle(args) -> int:
    inst, _ = instance_io.parse_instance(_read(args.instance))
    limits = OracleLimits(max_nodes=args.max_nodes, max_edges=args.max_edges)
    t0 = time.perf_counter()
    if args.engine == "partition":
        sol = exact_solve(inst, limits)
    else:
        sol = exact_solve_edge_subsets(inst, limits)
    dt = time.perf_counter() - t0
    meta = [("variant", inst.variant), ("engine", args.engine)]
    sys.stdout.write(instance_io.write_solution(sol, meta))
    print(f"wall-time {dt:.3f}s", file=sys.stderr)
    return 0


def _is_tree(inst: VariantInstance) -> bool:
    g = inst.graph
    return (
        g.edge_count == g.node_count - 1
        and components(g).component_count == 1
    )


def _audit_algorithms(inst: VariantInstance) -> list[tuple[str, str]]:
    """(algorithm, mode) pairs to audit for this instance's variant."""
    v = inst.variant
    if v == ALL_TO_ALL:
        return [("contract-multiway", "")]
    if v == SINGLE_TO_ALL:
        return [
            ("isolating-union", "keep-all"),
            ("isolating-union", "drop-largest"),
            ("fixed-q", ""),
        ]
    if v == SINGLE_TO_SINGLE:
        out = [("gomory-hu", ""), ("fixed-q", "")]
        if _is_tree(inst):
            out.insert(0, ("tree-greedy", ""))
        return out
    return [("fixed-q", "")]


def _cmd_audit(args) -> int:
    try:
        names = sorted(
            f for f in os.listdir(args.corpus) if f.endswith(".instance")
        )
    except OSError as exc:
        raise StructuralError(f"cannot list {args.corpus}: {exc}") from None
    if not names:
        raise StructuralError(f"no .instance files under {args.corpus}")
    worst: dict[tuple[str, str, str], float] = {}
    feasible = infeasible = skipped = 0
    for fname in names:
        inst, _ = instance_io.parse_instance(_read(os.path.join(args.corpus, fname)))
        if not check_feasibility(inst).feasible:
            infeasible += 1
            print(f"{fname} {inst.variant} infeasible")
            continue
        try:
            opt = exact_solve(inst).weight
        except BudgetExceededError:
            skipped += 1
            print(f"{fname} {inst.variant} oracle-skipped")
            continue
        feasible += 1
        for algo, mode in _audit_algorithms(inst):
            ns = argparse.Namespace(
                params_file=None,
                seed=args.seed,
                samples=args.samples,
                threads=args.threads,
                mode=mode or "keep-all",
            )
            sol, _name = _solve_with(inst, algo, ns)
            if opt > 1e-12:
                ratio = sol.weight / opt
            else:
                ratio = 1.0 if sol.weight <= 1e-12 else float("inf")
            label = f"{algo}[{mode}]" if mode else algo
            key = (inst.variant, algo, mode)
            worst[key] = max(worst.get(key, 0.0), ratio)
            print(f"{fname} {inst.variant} {label} ratio {ratio:.6f}")
    for variant, algo, mode in sorted(worst):
        label = f"{algo}[{mode}]" if mode else algo
        print(f"worst {variant} {label} {worst[(variant, algo, mode)]:.6f}")
    print(f"instances {len(names)} feasible {feasible} infeasible {infeasible} oracle-skipped {skipped}")
    return 0


def _relaxation_for_dump(inst: VariantInstance) -> LabelingInstance:
    """The labeling relaxation the default pipeline would solve first.

    For single-to-all and single-to-single the relaxation depends on the
    representative tuple; the lexicographically first admissible tuple is
    used so the dump is deterministic.
    """
    g = inst.graph
    q = inst.q
    sets = inst.family.sets
    if inst.variant == ALL_TO_ALL:
        res = contract(g, sets)
        terminals = tuple(min(t) for t in sets)
        labels = uniform_labels(res.graph, q, {t: i for i, t in enumerate(terminals)})
        return LabelingInstance(res.graph, q, labels, terminals, MULTIWAY)
    if inst.variant == SINGLE_TO_ALL:
        pools = [
            sorted(sets[i].difference(*[sets[j] for j in range(q) if j != i]))
            for i in range(q)
        ]
        if any(not p for p in pools):
            raise InfeasibleInstanceError("no admissible representative tuple")
        combo = tuple(p[0] for p in pools)
        labels = {}
        for v in g.nodes:
            owners = [j for j in range(q) if v in sets[j]]
            if len(owners) >= 2:
                labels[v] = frozenset([q])
            elif len(owners) == 1:
                labels[v] = frozenset([owners[0], q])
            else:
                labels[v] = frozenset(range(q + 1))
        for i, t in enumerate(combo):
            labels[t] = frozenset([i])
        return LabelingInstance(g, q + 1, labels, combo, LIFTED)
    if inst.variant == SINGLE_TO_SINGLE:
        for combo in itertools.product(*(sorted(t) for t in sets)):
            if len(set(combo)) == len(combo):
                labels = uniform_labels(g, q, {t: i for i, t in enumerate(combo)})
                return LabelingInstance(g, q, labels, tuple(combo), MULTIWAY)
        raise InfeasibleInstanceError("no transversal exists")
    raise StructuralError(
        "lp-dump handles all-to-all, single-to-all, and single-to-single instances"
    )


def _cmd_lp_dump(args) -> int:
    inst, _ = instance_io.parse_instance(_read(args.instance))
    li = _relaxation_for_dump(inst)
    lp, index = build_lift_lp(li)
    names = [""] * index.variable_count
    for (v, l), k in index.coordinate.items():
        names[k] = f"x_{v}_{l}"
    for (e, l), k in index.distance.items():
        names[k] = f"d_{e}_{l}"
    text = dump_lp_format(lp, names)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="repcut",
        description="Terminal-set cut variants: solve, validate, reduce, audit.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common_solver_flags(sp) -> None:
        sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        sp.add_argument(
            "--samples", type=int, default=128, help="rounding draws per relaxation (default 128)"
        )
        sp.add_argument("--params-file", help="JSON rounding parameters (b, probabilities, phi)")
        sp.add_argument(
            "--threads",
            type=int,
            default=None,
            help="worker threads for rounding (default REPCUT_THREADS or 1)",
        )

    sp = sub.add_parser("solve", help="solve an instance")
    sp.add_argument("instance")
    sp.add_argument("--algorithm", choices=_ALGORITHMS, default="auto")
    sp.add_argument(
        "--mode",
        choices=("keep-all", "drop-largest"),
        default="keep-all",
        help="isolating-union flavor",
    )
    common_solver_flags(sp)
    sp.add_argument("--solution-out", help="also write the report to this file")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("validate", help="check a solution file against an instance")
    sp.add_argument("instance")
    sp.add_argument("solution")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("reduce", help="rewrite a problem into another variant")
    sp.add_argument("input")
    sp.add_argument("--target", choices=_TARGETS, required=True)
    sp.add_argument("--out", help="write the reduced problem here (default stdout)")
    sp.add_argument("--map", help="write the JSON solution-mapping sidecar here")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("oracle", help="solve exactly by brute force (small instances)")
    sp.add_argument("instance")
    sp.add_argument("--engine", choices=("partition", "edge-subsets"), default="partition")
    sp.add_argument("--max-nodes", type=int, default=9)
    sp.add_argument("--max-edges", type=int, default=24)
    sp.set_defaults(func=_cmd_oracle)

    sp = sub.add_parser("audit", help="compare solvers against the oracle on a corpus")
    sp.add_argument("corpus", help="directory of .instance files")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=32)
    sp.add_argument("--threads", type=int, default=None)
    sp.set_defaults(func=_cmd_audit)

    sp = sub.add_parser("lp-dump", help="write the relaxation LP in LP format")
    sp.add_argument("instance")
    sp.add_argument("--out", help="write here instead of stdout")
    sp.set_defaults(func=_cmd_lp_dump)

    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StructuralError, InstanceValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleInstanceError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (CapExceededError, BudgetExceededError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
