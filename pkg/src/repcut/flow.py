"""Directed max-flow kernel: highest-label push-relabel with the gap heuristic.

Operates on a dense capacity matrix, which is the right shape for the graph
sizes this package sees (a few dozen nodes).  The public modules wrap this
kernel for undirected min cuts and for unit-capacity path systems.
"""

from __future__ import annotations

import numpy as np

from .errors import SolverFailureError

_EPS = 1e-12


def max_flow_dense(cap: np.ndarray, s: int, t: int) -> tuple[float, np.ndarray]:
    """Maximum s-t flow on a dense nonnegative capacity matrix.

    Returns (value, flow) where flow is antisymmetric: flow[u, v] is net flow
    from u to v and respects flow[u, v] <= cap[u, v].
    """
    n = cap.shape[0]
    if s == t:
        raise SolverFailureError("source equals sink")
    flow = np.zeros_like(cap)
    height = np.zeros(n, dtype=np.int64)
    excess = np.zeros(n, dtype=np.float64)
    height[s] = n

    # saturate source arcs
    for v in range(n):
        c = cap[s, v]
        if c > _EPS and v != s:
            flow[s, v] = c
            flow[v, s] = -c
            excess[v] += c
            excess[s] -= c

    # buckets[h] holds active node indices of height h, ascending index order
    buckets: list[list[int]] = [[] for _ in range(2 * n + 1)]
    height_count = np.zeros(2 * n + 1, dtype=np.int64)
    for v in range(n):
        height_count[height[v]] += 1
        if v not in (s, t) and excess[v] > _EPS:
            buckets[0].append(v)
    highest = 0

    def push(u: int, v: int) -> None:
        delta = min(excess[u], cap[u, v] - flow[u, v])
        flow[u, v] += delta
        flow[v, u] -= delta
        excess[u] -= delta
        excess[v] += delta

    while True:
        while highest >= 0 and not buckets[highest]:
            highest -= 1
        if highest < 0:
            break
        u = buckets[highest].pop()
        if u in (s, t) or excess[u] <= _EPS:
            continue
        while excess[u] > _EPS:
            hu = height[u]
            pushed = False
            residual = cap[u] - flow[u]
            for v in range(n):
                if residual[v] > _EPS and height[v] == hu - 1:
                    had = excess[v] > _EPS
                    push(u, v)
                    if not had and excess[v] > _EPS and v not in (s, t):
                        buckets[height[v]].append(v)
                        if height[v] > highest:
                            highest = height[v]
                    pushed = True
                    if excess[u] <= _EPS:
                        break
            if excess[u] <= _EPS:
                break
            if not pushed:
                # relabel u to one above its lowest admissible neighbor
                mask = residual > _EPS
                if not mask.any():
                    raise SolverFailureError("active node with no residual arcs")
                new_h = int(height[mask].min()) + 1
                old_h = int(height[u])
                height_count[old_h] -= 1
                if height_count[old_h] == 0 and old_h < n:
                    # gap heuristic: nodes stranded above the gap can never
                    # reach the sink again, lift them past the source level
                    for v in range(n):
                        if v != s and old_h < height[v] <= n:
                            height_count[height[v]] -= 1
                            height[v] = n + 1
                            height_count[n + 1] += 1
                    if new_h <= n:
                        new_h = n + 1
                if new_h > 2 * n:
                    new_h = 2 * n
                height[u] = new_h
                height_count[new_h] += 1
            if height[u] >= 2 * n:
                break
        if excess[u] > _EPS and u not in (s, t):
            buckets[height[u]].append(u)
            if height[u] > highest:
                highest = height[u]

    value = float(excess[t])
    _self_check(cap, flow, s, t, value)
    return value, flow


def _self_check(cap: np.ndarray, flow: np.ndarray, s: int, t: int, value: float) -> None:
    tol = 1e-9 * max(1.0, float(np.abs(cap).max(initial=0.0)))
    if np.any(flow - cap > tol):
        raise SolverFailureError("capacity violated")
    if np.abs(flow + flow.T).max(initial=0.0) > tol:
        raise SolverFailureError("flow not antisymmetric")
    net = flow.sum(axis=1)
    n = cap.shape[0]
    for v in range(n):
        if v not in (s, t) and abs(net[v]) > tol:
            raise SolverFailureError("flow conservation violated")
    if abs(net[s] - value) > tol or abs(net[t] + value) > tol:
        raise SolverFailureError("flow value inconsistent")


def residual_reachable(cap: np.ndarray, flow: np.ndarray, s: int) -> np.ndarray:
    """Boolean mask of nodes reachable from s along positive residual arcs."""
    n = cap.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[s] = True
    stack = [s]
    residual = cap - flow
    while stack:
        u = stack.pop()
        for v in np.nonzero(residual[u] > _EPS)[0]:
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    return seen
