"""Positional encodings and explicit flows.

A positional encoding ``p`` is a nondecreasing list of n integers in
``[0, D_m - S_n]``. Laying the sources out on the demand axis with ``p[i]``
units of unmet demand in front of source ``i`` gives a monotonic flow with no
hole, and every such flow can be written this way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .balanced import solve_balanced
from .errors import EncodingError, FlowError
from .instance import Instance

__all__ = [
    "Flow",
    "PositionalEncoding",
    "check_encoding",
    "decode",
    "encode",
    "flow_cost",
    "make_flow",
    "check_monotonic",
    "check_no_hole",
    "feasibility_violations",
]

PositionalEncoding = tuple[int, ...]

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class Flow:
    """Sparse transport plan: sorted ``(source, sink, amount)`` triples and their cost."""

    triples: tuple[Triple, ...]
    total_cost: int

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)


def flow_cost(inst: Instance, triples: Iterable[Triple]) -> int:
    c, u, v = inst.cost_model, inst.u, inst.v
    total = 0
    for i, j, x in triples:
        if not (0 <= i < inst.n and 0 <= j < inst.m):
            raise IndexError(f"flow index ({i}, {j}) out of range")
        total += c(u[i] - v[j]) * x
    return total


def make_flow(inst: Instance, triples: Iterable[Triple]) -> Flow:
    """Build a Flow, merging duplicate pairs and dropping zero amounts."""
    merged: dict[tuple[int, int], int] = {}
    for i, j, x in triples:
        merged[i, j] = merged.get((i, j), 0) + x
    ordered = tuple(sorted((i, j, x) for (i, j), x in merged.items() if x != 0))
    return Flow(ordered, flow_cost(inst, ordered))


def feasibility_violations(inst: Instance, triples: Iterable[Triple]) -> list[str]:
    """List every violated row, column or sign constraint (empty when feasible)."""
    problems = []
    row = [0] * inst.n
    col = [0] * inst.m
    for i, j, x in triples:
        if not (0 <= i < inst.n and 0 <= j < inst.m):
            problems.append(f"index ({i}, {j}) out of range")
            continue
        if x <= 0:
            problems.append(f"non-positive amount {x} at ({i}, {j})")
        row[i] += x
        col[j] += x
    for i, (got, want) in enumerate(zip(row, inst.s)):
        if got != want:
            problems.append(f"source {i} ships {got}, supply is {want}")
    for j, (got, cap) in enumerate(zip(col, inst.d)):
        if got > cap:
            problems.append(f"sink {j} receives {got}, demand is {cap}")
    return problems


def check_monotonic(triples: Iterable[Triple]) -> bool:
    """True when no two allocations cross."""
    last_sink = -1
    for _, j, x in sorted(triples):
        if x == 0:
            continue
        if j < last_sink:
            return False
        last_sink = j
    return True


def _sink_runs(triples: Iterable[Triple]) -> dict[int, list[tuple[int, int]]]:
    runs: dict[int, list[tuple[int, int]]] = {}
    for i, j, x in sorted(triples):
        if x:
            runs.setdefault(i, []).append((j, x))
    return runs


def check_no_hole(inst: Instance, triples: Iterable[Triple]) -> bool:
    """True when each source spanning several sinks fills every sink strictly between them."""
    triples = list(triples)
    if not check_monotonic(triples):
        raise FlowError("no-hole check requires a monotonic flow")
    for run in _sink_runs(triples).values():
        for (j0, _), (j1, _) in zip(run, run[1:]):
            if j1 != j0 + 1:
                return False
        for j, x in run[1:-1]:
            if x != inst.d[j]:
                return False
    return True


def check_encoding(inst: Instance, p: Sequence[int]) -> None:
    if len(p) != inst.n:
        raise EncodingError(f"encoding has {len(p)} entries, expected {inst.n}")
    upper = inst.D[-1] - inst.S[-1]
    prev = 0
    for i, x in enumerate(p):
        if x < prev:
            raise EncodingError(f"encoding decreases at index {i}")
        prev = x
    if p and p[-1] > upper:
        raise EncodingError(f"encoding exceeds the unmet-demand total {upper}")


def decode(inst: Instance, p: Sequence[int]) -> Flow:
    """Expand an encoding into a Flow in O(n + m).

    Interleaves ``n + 1`` phantom sources carrying the gaps between positions
    with the real sources, solves that balanced problem greedily and keeps
    the real sources' allocations.
    """
    check_encoding(inst, p)
    aug = [0] * (2 * inst.n + 1)
    prev = 0
    for i, (x, s) in enumerate(zip(p, inst.s)):
        aug[2 * i] = x - prev
        aug[2 * i + 1] = s
        prev = x
    aug[-1] = inst.D[-1] - inst.S[-1] - prev
    triples = tuple((k >> 1, j, x) for k, j, x in solve_balanced(aug, inst.d) if k & 1)
    return Flow(triples, flow_cost(inst, triples))


def encode(inst: Instance, flow: Flow | Iterable[Triple]) -> PositionalEncoding:
    """Canonical encoding of a feasible, monotonic, hole-free flow.

    A source confined to one sink goes right after the earlier mass in that
    sink: ``p = D[j] - (flow into sinks before j)``. A source spanning several
    sinks must end its first sink flush, so ``p = D[j+1] - x[i][j] - S[i]``.
    """
    triples = list(flow)
    problems = feasibility_violations(inst, triples)
    if problems:
        raise FlowError("infeasible flow: " + "; ".join(problems))
    if not check_monotonic(triples):
        raise FlowError("flow is not monotonic")
    if not check_no_hole(inst, triples):
        raise FlowError("flow has a hole")
    into = [0] * inst.m
    for _, j, x in triples:
        into[j] += x
    before = [0] * (inst.m + 1)
    for j in range(inst.m):
        before[j + 1] = before[j] + into[j]
    p = []
    for i, run in sorted(_sink_runs(triples).items()):
        j0, x0 = run[0]
        if len(run) == 1:
            p.append(inst.D[j0] - before[j0])
        else:
            p.append(inst.D[j0 + 1] - x0 - inst.S[i])
    return tuple(p)
