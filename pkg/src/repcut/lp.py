"""Dense linear programming via two-phase revised simplex.

Minimizes c.x subject to row constraints (<=, =, >=) and per-variable bounds.
Pricing is Dantzig's rule with a permanent switch to Bland's rule once the
degenerate-pivot counter passes 10 * (n + m), which guarantees termination.
The basis inverse is maintained explicitly with rank-one pivot updates and
refactorized periodically; everything is deterministic, so re-solving the
same program gives bit-identical output.

The solver is exact to within EPS on the small rational programs this
package generates.  It is not meant for large or ill-conditioned inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PreconditionError, SolverFailureError, StructuralError

EPS = 1e-9
_REFACTOR_EVERY = 100

LESS, EQUAL, GREATER = "<=", "=", ">="
_RELATIONS = (LESS, EQUAL, GREATER)


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x  s.t.  lhs x (rel) rhs,  lower <= x <= upper."""

    objective: tuple[float, ...]
    lhs: tuple[tuple[float, ...], ...]
    relations: tuple[str, ...]
    rhs: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.objective)
        if len(self.lower) != n or len(self.upper) != n:
            raise StructuralError("bounds length must match variable count")
        m = len(self.lhs)
        if len(self.relations) != m or len(self.rhs) != m:
            raise StructuralError("constraint arrays must share one length")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise StructuralError(f"unknown relation {rel!r}")
        for row in self.lhs:
            if len(row) != n:
                raise StructuralError("constraint row width must match variable count")
        for lo, hi in zip(self.lower, self.upper):
            if not np.isfinite(lo):
                raise StructuralError("lower bounds must be finite")
            if hi < lo:
                raise StructuralError("upper bound below lower bound")

    @staticmethod
    def build(
        objective: Sequence[float],
        lhs: Sequence[Sequence[float]],
        relations: Sequence[str],
        rhs: Sequence[float],
        lower: Sequence[float] | None = None,
        upper: Sequence[float] | None = None,
    ) -> "LinearProgram":
        n = len(objective)
        lo = tuple(float(x) for x in (lower if lower is not None else [0.0] * n))
        # per-entry None means unbounded above
        hi = tuple(
            float(x) if x is not None else np.inf
            for x in (upper if upper is not None else [None] * n)
        )
        return LinearProgram(
            tuple(float(c) for c in objective),
            tuple(tuple(float(a) for a in row) for row in lhs),
            tuple(relations),
            tuple(float(b) for b in rhs),
            lo,
            hi,
        )

    @property
    def variable_count(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: tuple[float, ...] | None
    objective_value: float | None


class _Simplex:
    """Standard-form core: min c.y s.t. A y = b, y >= 0, b >= 0."""

    def __init__(self, a: np.ndarray, b: np.ndarray, c: np.ndarray, basis: list[int]):
        self.a = a
        self.b = b
        self.c = c
        self.m, self.n = a.shape
        self.basis = basis
        self.b_inv = np.linalg.inv(a[:, basis])
        self.degenerate_pivots = 0
        self.bland = False
        self.bland_trigger = 10 * (self.m + self.n)
        self.pivots = 0

    def refactor(self) -> None:
        self.b_inv = np.linalg.inv(self.a[:, self.basis])

    def solve(self, allowed: np.ndarray) -> str:
        """Run to optimality over columns marked allowed. Returns status."""
        while True:
            xb = self.b_inv @ self.b
            y = self.c[self.basis] @ self.b_inv
            reduced = self.c - y @ self.a
            reduced[~allowed] = 0.0
            if self.bland:
                candidates = np.nonzero(reduced < -EPS)[0]
                if candidates.size == 0:
                    return "optimal"
                enter = int(candidates[0])
            else:
                enter = int(np.argmin(reduced))
                if reduced[enter] >= -EPS:
                    return "optimal"
            direction = self.b_inv @ self.a[:, enter]
            pos = direction > EPS
            if not pos.any():
                return "unbounded"
            ratios = np.full(self.m, np.inf)
            ratios[pos] = xb[pos] / direction[pos]
            best = ratios.min()
            rows = np.nonzero(ratios <= best + EPS)[0]
            if self.bland:
                # leave by smallest basis variable index: anti-cycling
                leave_row = int(min(rows, key=lambda r: self.basis[r]))
            else:
                leave_row = int(rows[0])
            if best <= EPS:
                self.degenerate_pivots += 1
                if self.degenerate_pivots >= self.bland_trigger:
                    self.bland = True
            self._pivot(enter, leave_row, direction)

    def _pivot(self, enter: int, row: int, direction: np.ndarray) -> None:
        self.basis[row] = enter
        piv = direction[row]
        if abs(piv) < 1e-13:
            raise SolverFailureError("numerically singular pivot")
        self.b_inv[row] /= piv
        for i in range(self.m):
            if i != row and abs(direction[i]) > 1e-14:
                self.b_inv[i] -= direction[i] * self.b_inv[row]
        self.pivots += 1
        if self.pivots % _REFACTOR_EVERY == 0:
            self.refactor()

    def basic_values(self) -> np.ndarray:
        return self.b_inv @ self.b


def solve_lp(p: LinearProgram) -> LpSolution:
    """Solve the program; statuses are optimal, infeasible, or unbounded."""
    n = p.variable_count
    lower = np.array(p.lower)
    upper = np.array(p.upper)
    c_orig = np.array(p.objective)

    # shift to y = x - lower >= 0; finite upper bounds become rows
    rows: list[np.ndarray] = []
    rels: list[str] = []
    rhs: list[float] = []
    for row, rel, b in zip(p.lhs, p.relations, p.rhs):
        arr = np.array(row)
        rows.append(arr)
        rels.append(rel)
        rhs.append(float(b) - float(arr @ lower))
    for j in range(n):
        if np.isfinite(upper[j]):
            arr = np.zeros(n)
            arr[j] = 1.0
            rows.append(arr)
            rels.append(LESS)
            rhs.append(float(upper[j] - lower[j]))

    # normalize rhs >= 0
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = -rows[i]
            rhs[i] = -rhs[i]
            rels[i] = {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL}[rels[i]]

    m = len(rows)
    if m == 0:
        # bounds-only program: minimize each coefficient independently
        vals = np.where(c_orig >= 0, lower, upper)
        if np.any((c_orig < 0) & ~np.isfinite(vals)):
            return LpSolution("unbounded", None, None)
        return LpSolution("optimal", tuple(float(v) for v in vals), float(c_orig @ vals))

    a_rows = np.vstack(rows)
    b_vec = np.array(rhs)

    n_slack = sum(1 for r in rels if r == LESS)
    n_surplus = sum(1 for r in rels if r == GREATER)
    n_art = sum(1 for r in rels if r != LESS)
    total = n + n_slack + n_surplus + n_art
    a = np.zeros((m, total))
    a[:, :n] = a_rows
    basis: list[int] = []
    art_cols: list[int] = []
    sl = n
    su = n + n_slack
    ar = n + n_slack + n_surplus
    for i, rel in enumerate(rels):
        if rel == LESS:
            a[i, sl] = 1.0
            basis.append(sl)
            sl += 1
        elif rel == GREATER:
            a[i, su] = -1.0
            su += 1
            a[i, ar] = 1.0
            basis.append(ar)
            art_cols.append(ar)
            ar += 1
        else:
            a[i, ar] = 1.0
            basis.append(ar)
            art_cols.append(ar)
            ar += 1

    core = _Simplex(a, b_vec, np.zeros(total), list(basis))

    if art_cols:
        c1 = np.zeros(total)
        c1[art_cols] = 1.0
        core.c = c1
        allowed = np.ones(total, dtype=bool)
        status = core.solve(allowed)
        if status != "optimal":
            raise SolverFailureError("phase 1 cannot be unbounded")
        xb = core.basic_values()
        if float(c1[core.basis] @ xb) > 1e-7:
            return LpSolution("infeasible", None, None)
        _drive_out_artificials(core, set(art_cols))

    c_full = np.zeros(total)
    c_full[:n] = c_orig
    core.c = c_full
    allowed = np.ones(total, dtype=bool)
    for j in art_cols:
        allowed[j] = False
    status = core.solve(allowed)
    if status == "unbounded":
        return LpSolution("unbounded", None, None)
    xb = core.basic_values()
    y = np.zeros(total)
    y[core.basis] = xb
    y = np.clip(y, 0.0, None)  # wipe roundoff at active bounds
    x = y[:n] + lower
    return LpSolution("optimal", tuple(float(v) for v in x), float(c_orig @ x))


def _drive_out_artificials(core: _Simplex, art: set[int]) -> None:
    """Pivot zero-valued artificial variables out of the basis when possible."""
    for row in range(core.m):
        if core.basis[row] not in art:
            continue
        tableau_row = core.b_inv[row] @ core.a
        pivot_col = -1
        for j in range(core.n):
            if j not in art and abs(tableau_row[j]) > 1e-9:
                pivot_col = j
                break
        if pivot_col >= 0:
            direction = core.b_inv @ core.a[:, pivot_col]
            core._pivot(pivot_col, row, direction)
        # else: redundant row; leaving the artificial basic at value zero is
        # harmless because its column is excluded from phase 2 pricing


def dump_lp_format(p: LinearProgram, names: Sequence[str] | None = None) -> str:
    """Render the program in the standard LP file format (CPLEX dialect)."""
    n = p.variable_count
    if names is None:
        names = [f"x{j}" for j in range(n)]
    if len(names) != n:
        raise PreconditionError("need one name per variable")

    def terms(coeffs: Sequence[float]) -> str:
        parts: list[str] = []
        for name, coef in zip(names, coeffs):
            if coef == 0.0:
                continue
            sign = "+" if coef >= 0 else "-"
            mag = abs(coef)
            body = name if mag == 1.0 else f"{mag:.12g} {name}"
            parts.append(f"{sign} {body}")
        if not parts:
            return "0"
        first = parts[0].lstrip("+ ").strip()
        return " ".join([first] + parts[1:])

    out = ["Minimize", f" obj: {terms(p.objective)}", "Subject To"]
    for i, (row, rel, b) in enumerate(zip(p.lhs, p.relations, p.rhs)):
        out.append(f" c{i}: {terms(row)} {rel} {b:.12g}")
    out.append("Bounds")
    for j, (lo, hi) in enumerate(zip(p.lower, p.upper)):
        hi_txt = "+inf" if not np.isfinite(hi) else f"{hi:.12g}"
        out.append(f" {lo:.12g} <= {names[j]} <= {hi_txt}")
    out.append("End")
    return "\n".join(out) + "\n"
