"""O((n + m) log(n + m)) solver working on positional encodings.

The solver keeps the encoding of the optimal solution for the first i sources.
Adding source i only ever moves the last, shared position ``p`` down, which
drags every earlier source whose position equals it. The marginal cost of
moving ``p`` down by one unit is ``slope(p) + c[i][j]`` where ``j`` is the last
occupied sink and ``slope(p)`` is the sum of all stored cost changes at
positions ``>= p``. The alternative is to send the overflow to sink ``j + 1``
at ``c[i][j + 1]``. Cost changes are stored lazily: when ``p`` leaves a
position, the value stored there is folded into the next position down.

Three kinds of cost change are stored, all at positions ``D[a] - S[b]``:

* sink events ``c[i][l] - c[i][l + 1]`` at ``min(D[l + 1] - S[i], p)``, for
  each sink ``l`` that source i skips over or overflows past (its first
  unit would move from sink ``l + 1`` to sink ``l``);
* boundary events ``delta(i - 1, l)`` at ``D[l + 1] - S[i]``, where the
  boundary between sources i-1 and i would cross from sink ``l + 1`` into
  sink ``l``;
* folded values carried down from a higher position.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from sortedcontainers import SortedDict

from .balanced import solve_balanced
from .encoding import Flow, PositionalEncoding, decode, flow_cost
from .errors import SolverConsistencyError
from .instance import Instance

__all__ = ["CostChangeQueue", "FastStats", "solve_fast", "solve", "COMPILED_MIN_SIZE"]

# Below this n + m the JIT kernel is not worth its call overhead.
COMPILED_MIN_SIZE = 2_000


class CostChangeQueue:
    """Ordered map from position to accumulated cost change.

    Entries are never zero: an insert that cancels an existing value removes
    the entry. With ``record=True`` every insertion position is kept in
    ``positions`` for inspection.
    """

    def __init__(self, record: bool = False):
        self._map = SortedDict()
        self.positions: list[int] | None = [] if record else None

    def add(self, pos: int, gamma: int) -> None:
        if self.positions is not None:
            self.positions.append(pos)
        if gamma == 0:
            return
        total = self._map.get(pos, 0) + gamma
        if total:
            self._map[pos] = total
        else:
            del self._map[pos]

    def get(self, pos: int) -> int:
        return self._map.get(pos, 0)

    def pop(self, pos: int) -> int:
        return self._map.pop(pos, 0)

    def predecessor(self, pos: int) -> int | None:
        """Largest stored position strictly below ``pos``."""
        k = self._map.bisect_left(pos)
        return self._map.keys()[k - 1] if k else None

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, pos: int) -> bool:
        return pos in self._map

    def items(self):
        return self._map.items()


@dataclass
class FastStats:
    """Operation counters for one solve.

    ``iterations`` counts inner-loop passes, ``sink_events`` the stored
    single-source sink changes and ``delta_events`` the stored non-zero
    boundary changes. ``event_positions`` is filled only by traced Python
    solves.
    """

    iterations: int = 0
    sink_events: int = 0
    delta_events: int = 0
    backend: str = ""
    event_positions: list[int] | None = field(default=None, repr=False)


def solve_fast(
    inst: Instance,
    *,
    backend: str = "auto",
    stats: FastStats | None = None,
    trace: bool = False,
) -> tuple[PositionalEncoding, int]:
    """Return an optimal positional encoding and the exact optimal cost.

    ``backend`` is ``"python"``, ``"compiled"`` or ``"auto"``. The compiled
    kernel handles the absolute and squared models when every intermediate
    value fits in 64 bits; ``auto`` picks it for instances with at least
    ``COMPILED_MIN_SIZE`` points and otherwise falls back to Python.
    ``trace`` forces the Python route and records event positions in
    ``stats``.
    """
    if backend not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    compilable = inst.cost_model.kind in ("absolute", "squared") and inst.fits_bits(64)
    if backend == "compiled" and not compilable:
        raise ValueError("compiled backend needs an absolute/squared model within 64-bit range")
    use_compiled = not trace and (
        backend == "compiled"
        or (backend == "auto" and compilable and inst.n + inst.m >= COMPILED_MIN_SIZE)
    )
    if stats is None:
        stats = FastStats()
    if use_compiled:
        from ._kernel import solve_compiled

        stats.backend = "compiled"
        return solve_compiled(inst, stats)
    stats.backend = "python"
    return _solve_python(inst, stats, trace)


def _solve_python(inst: Instance, stats: FastStats, trace: bool) -> tuple[PositionalEncoding, int]:
    n, m = inst.n, inst.m
    S, D, u, v = inst.S, inst.D, inst.u, inst.v
    phi = inst.cost_model
    absolute = phi.kind == "absolute"
    queue = CostChangeQueue(record=trace)
    enc = [0] * n
    j = 0
    p = 0
    total = 0

    for i in range(n):
        ui = u[i]
        o = inst.best_sink(i)
        if o > j:
            for l in range(j, o):
                queue.add(D[l + 1] - S[i], phi(ui - v[l]) - phi(ui - v[l + 1]))
                stats.sink_events += 1
        if i:
            cand = inst.nonzero_delta_range(i - 1) if absolute else range(m - 1)
            # boundary positions below zero are unreachable
            lo = max(cand.start, bisect.bisect_left(D, S[i]) - 1)
            for l in range(lo, min(cand.stop, j)):
                g = inst.delta(i - 1, l)
                if g:
                    queue.add(D[l + 1] - S[i], g)
                    stats.delta_events += 1
        if o > j:
            j = o
        if D[j] - S[i] > p:
            p = D[j] - S[i]
        end = S[i + 1]
        total += phi(ui - v[j]) * (min(end + p, D[j + 1]) - (S[i] + p))

        while p > D[j + 1] - end:
            stats.iterations += 1
            cij = phi(ui - v[j])
            if j == m - 1:
                left = True
            elif p == 0:
                left = False
            else:
                left = queue.get(p) + cij < phi(ui - v[j + 1])
            if left:
                g = queue.pop(p)
                floor = max(D[j + 1] - end, 0)
                below = queue.predecessor(p)
                target = floor if below is None or below < floor else below
                total += (p - target) * (g + cij)
                p = target
                queue.add(p, g)
            else:
                cnext = phi(ui - v[j + 1])
                queue.add(min(D[j + 1] - S[i], p), cij - cnext)
                stats.sink_events += 1
                j += 1
                total += cnext * (min(end + p, D[j + 1]) - D[j])
        enc[i] = p

    for i in range(n - 2, -1, -1):
        if enc[i] > enc[i + 1]:
            enc[i] = enc[i + 1]
    if trace:
        stats.event_positions = queue.positions
    return tuple(enc), total


def solve(inst: Instance, *, backend: str = "auto", stats: FastStats | None = None) -> Flow:
    """Solve to an explicit Flow.

    Balanced instances go straight to the greedy solver. Otherwise the
    encoding from :func:`solve_fast` is decoded, and the decoded cost must
    equal the cost tracked during the solve.
    """
    if inst.is_balanced:
        triples = tuple(solve_balanced(inst.s, inst.d))
        return Flow(triples, flow_cost(inst, triples))
    enc, cost = solve_fast(inst, backend=backend, stats=stats)
    flow = decode(inst, enc)
    if flow.total_cost != cost:
        raise SolverConsistencyError(
            f"tracked cost {cost} differs from decoded cost {flow.total_cost}"
        )
    return flow
