"""Slow but trustworthy solvers used to validate the fast one.

``solve_ssp_baseline`` is the plain 1D successive-shortest-path method: it
keeps an explicit flow and only ever considers two candidate augmenting paths.
``solve_mincostflow_oracle`` knows nothing about the 1D structure; it runs
textbook successive shortest paths with a label-correcting search on the
full bipartite residual network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

from .encoding import Flow, make_flow
from .errors import OracleGuardError
from .instance import Instance

__all__ = ["BaselineStats", "solve_ssp_baseline", "solve_mincostflow_oracle", "ORACLE_MAX_CELLS"]

ORACLE_MAX_CELLS = 10_000


@dataclass
class BaselineStats:
    sends: int = 0


def solve_ssp_baseline(
    inst: Instance,
    *,
    stats: BaselineStats | None = None,
    on_send: Callable[[list[tuple[int, int, int]]], None] | None = None,
) -> Flow:
    """Solve with the O(nm(n+m)) successive-shortest-path baseline.

    Sources are processed in coordinate order. Each augmentation ships the
    path's bottleneck amount either to the first free sink at or after the
    source's best sink, or along the chain of full sinks ending at the sink
    just before it, whichever is cheaper (ties go left). A chain moves the
    leftmost source of each full sink one sink to the left.

    ``on_send`` receives the current triples after every augmentation.
    """
    n, m = inst.n, inst.m
    u, v, c = inst.u, inst.v, inst.cost_model
    free = list(inst.d)
    # per-sink allocations in source order: [source, amount]
    alloc: list[deque] = [deque() for _ in range(m)]

    def chain(i: int, k: int):
        """Path cost beyond the first edge and the sinks/sources it displaces."""
        extra = 0
        steps = []
        while free[k] == 0:
            r, x = alloc[k][0]
            extra += c(u[r] - v[k - 1]) - c(u[r] - v[k])
            steps.append((k, r, x))
            k -= 1
        return extra, steps, k

    def send(i: int, k: int, amount_cap: int) -> int:
        _, steps, end = chain(i, k)
        # Consecutive steps moving the same source cancel in the middle
        # (r -> k-1 -> r -> k-2 is just r -> k-2), and so does a first step
        # moving i itself, so only the first step of each run bounds the amount.
        amount = min(amount_cap, free[end])
        prev = i
        for _, r, x in steps:
            if r != prev:
                amount = min(amount, x)
            prev = r
        _put(alloc[k], i, amount)
        for kk, r, _ in steps:
            head = alloc[kk][0]
            head[1] -= amount
            if head[1] == 0:
                alloc[kk].popleft()
            _put(alloc[kk - 1], r, amount)
        free[end] -= amount
        return amount

    for i in range(n):
        left = inst.s[i]
        o = inst.best_sink(i)
        while left > 0:
            j = next((k for k in range(o, m) if free[k] > 0), None)
            if j is None:
                target = m - 1
            elif not any(free[k] > 0 for k in range(j)):
                target = j
            else:
                extra, _, _ = chain(i, j - 1)
                if extra + c(u[i] - v[j - 1]) <= c(u[i] - v[j]):
                    target = j - 1
                else:
                    target = j
            left -= send(i, target, left)
            if stats is not None:
                stats.sends += 1
            if on_send is not None:
                on_send(_triples(alloc))
    return make_flow(inst, _triples(alloc))


def _put(q: deque, src: int, amount: int) -> None:
    if q and q[-1][0] == src:
        q[-1][1] += amount
    else:
        q.append([src, amount])


def _triples(alloc) -> list[tuple[int, int, int]]:
    return [(r, k, x) for k, q in enumerate(alloc) for r, x in q]


def solve_mincostflow_oracle(inst: Instance, *, max_cells: int = ORACLE_MAX_CELLS) -> Flow:
    """Optimal flow by generic successive shortest paths (desk scale only).

    Network: super source -> source i (capacity s_i), source i -> sink j
    (uncapacitated, cost c_ij), sink j -> super sink (capacity d_j). Exactly
    S_n units are routed; the unused sink capacity D_m - S_n is the slack.
    Shortest paths use a FIFO label-correcting search, which tolerates the
    negative residual arcs without potentials.

    Arc weights are ``c_ij * K + (u_i - v_j)**2`` with ``K`` larger than any
    total of the second term, so the result is optimal for ``c`` and, among
    those optima, for squared distance. Squared distance is strictly convex,
    which makes the returned optimum monotonic and free of holes instead of
    an arbitrary one.
    """
    n, m = inst.n, inst.m
    if n * m > max_cells:
        raise OracleGuardError(f"oracle limited to n*m <= {max_cells}, got {n * m}")
    src, snk = n + m, n + m + 1
    size = n + m + 2
    to: list[int] = []
    cap: list[int] = []
    cost: list[int] = []
    adj: list[list[int]] = [[] for _ in range(size)]

    def arc(a, b, capacity, w):
        adj[a].append(len(to))
        to.append(b), cap.append(capacity), cost.append(w)
        adj[b].append(len(to))
        to.append(a), cap.append(0), cost.append(-w)

    big = inst.total_supply
    span = max(inst.u[-1], inst.v[-1]) - min(inst.u[0], inst.v[0])
    scale = big * span * span + 1
    for i in range(n):
        arc(src, i, inst.s[i], 0)
    mid_arcs = {}
    for i in range(n):
        for j in range(m):
            mid_arcs[i, j] = len(to)
            diff = inst.u[i] - inst.v[j]
            arc(i, n + j, big, inst.cost_model(diff) * scale + diff * diff)
    for j in range(m):
        arc(n + j, snk, inst.d[j], 0)

    shipped = 0
    while shipped < inst.total_supply:
        dist = [None] * size
        via = [-1] * size
        dist[src] = 0
        queue = deque([src])
        queued = [False] * size
        queued[src] = True
        while queue:
            a = queue.popleft()
            queued[a] = False
            da = dist[a]
            for e in adj[a]:
                if cap[e] > 0:
                    b = to[e]
                    nd = da + cost[e]
                    if dist[b] is None or nd < dist[b]:
                        dist[b] = nd
                        via[b] = e
                        if not queued[b]:
                            queued[b] = True
                            queue.append(b)
        if dist[snk] is None:
            raise AssertionError("feasible instance left supply unrouted")
        amount = inst.total_supply - shipped
        b = snk
        while b != src:
            e = via[b]
            amount = min(amount, cap[e])
            b = to[e ^ 1]
        b = snk
        while b != src:
            e = via[b]
            cap[e] -= amount
            cap[e ^ 1] += amount
            b = to[e ^ 1]
        shipped += amount

    triples = [(i, j, cap[e ^ 1]) for (i, j), e in mid_arcs.items() if cap[e ^ 1] > 0]
    return make_flow(inst, triples)
