"""Problem model for 1D unbalanced transport.

Sources carry supplies that must be shipped in full; sinks carry demands that
act as capacities and may be left partly unfilled. All quantities are exact
Python integers. Indices in the public API are 0-based.
"""

from __future__ import annotations

import bisect
import itertools
import operator
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, InfeasibleError, InstanceError

__all__ = [
    "CostModel",
    "ABSOLUTE",
    "SQUARED",
    "IndexMap",
    "Instance",
    "build_instance",
]


@dataclass(frozen=True)
class CostModel:
    """Ground cost as a convex function of the signed difference ``u - v``.

    ``kind`` is ``"absolute"``, ``"squared"`` or ``"custom"``. A custom model
    wraps ``phi``, which must map integers to integers and be convex; this is
    a contract, not something that can be checked.
    """

    kind: str = "absolute"
    phi: Callable[[int], int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("absolute", "squared", "custom"):
            raise ValueError(f"unknown cost model {self.kind!r}")
        if (self.kind == "custom") != (self.phi is not None):
            raise ValueError("phi is required for custom models and only for them")

    @classmethod
    def custom(cls, phi: Callable[[int], int]) -> "CostModel":
        return cls("custom", phi)

    @classmethod
    def from_name(cls, name: str) -> "CostModel":
        """Parse the CLI spelling (``l1``/``absolute``, ``squared``/``l2sq``)."""
        key = name.lower()
        if key in ("l1", "abs", "absolute"):
            return ABSOLUTE
        if key in ("squared", "sq", "l2sq"):
            return SQUARED
        raise ValueError(f"unknown cost model {name!r}")

    def __call__(self, diff: int) -> int:
        if self.kind == "absolute":
            return diff if diff >= 0 else -diff
        if self.kind == "squared":
            return diff * diff
        return self.phi(diff)


ABSOLUTE = CostModel("absolute")
SQUARED = CostModel("squared")


@dataclass(frozen=True)
class Instance:
    """A validated, sorted and merged 1D UOT problem.

    ``S`` and ``D`` are the prefix sums of supplies and demands (length n+1 and
    m+1). ``source_map`` and ``sink_map`` record which input entries were
    merged into each node.
    """

    u: tuple[int, ...]
    s: tuple[int, ...]
    v: tuple[int, ...]
    d: tuple[int, ...]
    S: tuple[int, ...]
    D: tuple[int, ...]
    cost_model: CostModel
    source_map: "IndexMap"
    sink_map: "IndexMap"

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def total_supply(self) -> int:
        return self.S[-1]

    @property
    def total_demand(self) -> int:
        return self.D[-1]

    @property
    def is_balanced(self) -> bool:
        return self.S[-1] == self.D[-1]

    def cost(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.m):
            raise IndexError(f"cost index ({i}, {j}) out of range")
        return self.cost_model(self.u[i] - self.v[j])

    def delta(self, i: int, j: int) -> int:
        """Change in path cost when source i+1 replaces source i at the j|j+1 boundary.

        ``c[i][j+1] + c[i+1][j] - c[i][j] - c[i+1][j+1]``; valid for
        ``0 <= i < n-1`` and ``0 <= j < m-1``.
        """
        if not (0 <= i < self.n - 1 and 0 <= j < self.m - 1):
            raise IndexError(f"delta index ({i}, {j}) out of range")
        c = self.cost_model
        u0, u1, v0, v1 = self.u[i], self.u[i + 1], self.v[j], self.v[j + 1]
        return c(u0 - v1) + c(u1 - v0) - c(u0 - v0) - c(u1 - v1)

    def nonzero_delta_range(self, i: int) -> range:
        """Sink indices j where ``delta(i, j)`` may be non-zero (absolute model only).

        These are exactly the j with ``u[i+1] > v[j]`` and ``u[i] < v[j+1]``;
        the set is contiguous and located by two binary searches.
        """
        if self.cost_model.kind != "absolute":
            raise NotImplementedError("nonzero_delta_range requires the absolute cost model")
        if not 0 <= i < self.n - 1:
            raise IndexError(f"source index {i} out of range")
        lo = max(bisect.bisect_right(self.v, self.u[i]) - 1, 0)
        hi = min(bisect.bisect_left(self.v, self.u[i + 1]), self.m - 1)
        return range(lo, max(lo, hi))

    def best_sink(self, i: int) -> int:
        """Leftmost sink minimizing the cost for source i.

        Costs along sorted sinks are unimodal for any convex model, so the
        first sink whose right neighbour is not cheaper is the leftmost minimum.
        """
        if not 0 <= i < self.n:
            raise IndexError(f"source index {i} out of range")
        c, ui, v = self.cost_model, self.u[i], self.v
        return bisect.bisect_left(
            range(self.m - 1), True, key=lambda j: c(ui - v[j + 1]) >= c(ui - v[j])
        )

    def max_cost(self) -> int:
        """Largest possible single-unit cost over the coordinate span."""
        lo = min(self.u[0], self.v[0])
        hi = max(self.u[-1], self.v[-1])
        span = hi - lo
        return max(self.cost_model(span), self.cost_model(-span), 0)

    def capacity_bound(self) -> int:
        """Upper bound on any intermediate integer the solvers produce.

        For the absolute and squared models the per-boundary cost differences
        telescope, so every slope stays within a few multiples of the largest
        single cost: the bound is ``D_m * (8 * max_cost + 1)``. Custom models
        get the generic ``D_m * (2n + 3) * max_cost + D_m``.
        """
        if self.cost_model.kind in ("absolute", "squared"):
            return self.D[-1] * (8 * self.max_cost() + 1)
        return self.D[-1] * (2 * self.n + 3) * self.max_cost() + self.D[-1]

    def fits_bits(self, bits: int = 64) -> bool:
        return self.capacity_bound() < 2 ** (bits - 1)

    def expand_flow(self, triples: Iterable[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
        """Map merged ``(i, j, x)`` triples back to original input indices.

        Mass sent from a merged node is split greedily across its constituents
        in input order. Since constituents share a coordinate the cost is
        unchanged. Output is sorted by original (source, sink).
        """
        src_left = list(self.source_map.raw_mass)
        snk_left = list(self.sink_map.raw_mass)
        src_ptr = list(self.source_map.starts[:-1])
        snk_ptr = list(self.sink_map.starts[:-1])
        src_order, snk_order = self.source_map.order, self.sink_map.order
        out: dict[tuple[int, int], int] = {}
        for i, j, x in sorted(triples):
            while x > 0:
                while src_left[src_order[src_ptr[i]]] == 0:
                    src_ptr[i] += 1
                while snk_left[snk_order[snk_ptr[j]]] == 0:
                    snk_ptr[j] += 1
                a, b = src_order[src_ptr[i]], snk_order[snk_ptr[j]]
                amount = min(x, src_left[a], snk_left[b])
                src_left[a] -= amount
                snk_left[b] -= amount
                x -= amount
                out[a, b] = out.get((a, b), 0) + amount
        return sorted((i, j, x) for (i, j), x in out.items())


def _as_int(value, kind: str, k: int, what: str) -> int:
    if not isinstance(value, bool):
        try:
            return operator.index(value)
        except TypeError:
            pass
    raise InstanceError(f"{kind} {k} {what} must be an integer, got {value!r}")


@dataclass(frozen=True)
class IndexMap:
    """Which input entries were merged into each node.

    Node ``g`` owns the input indices ``order[starts[g]:starts[g + 1]]`` in
    input order; ``raw_mass`` holds the input masses by input index.
    """

    order: tuple[int, ...]
    starts: tuple[int, ...]
    raw_mass: tuple[int, ...]

    def members(self, g: int) -> list[tuple[int, int]]:
        return [(k, self.raw_mass[k]) for k in self.order[self.starts[g]:self.starts[g + 1]]]

    @property
    def n_raw(self) -> int:
        return len(self.raw_mass)


def _merge(entries: Sequence[tuple[int, int]], kind: str):
    coords, masses = [], []
    for k, (x, mass) in enumerate(entries):
        if type(x) is not int:
            x = _as_int(x, kind, k, "coordinate")
        if type(mass) is not int:
            mass = _as_int(mass, kind, k, "mass")
        if mass < 0:
            raise InstanceError(f"{kind} {k} has negative mass {mass}")
        coords.append(x)
        masses.append(mass)
    # stable sort keeps input order inside each group of equal coordinates
    order = sorted(range(len(coords)), key=coords.__getitem__)
    out_x, out_mass, starts = [], [], []
    prev = None
    for pos, k in enumerate(order):
        x = coords[k]
        if x == prev:
            out_mass[-1] += masses[k]
        else:
            out_x.append(x)
            out_mass.append(masses[k])
            starts.append(pos)
            prev = x
    starts.append(len(order))
    if 0 in out_mass:
        keep = [g for g, mass in enumerate(out_mass) if mass > 0]
        order = [k for g in keep for k in order[starts[g]:starts[g + 1]]]
        sizes = [starts[g + 1] - starts[g] for g in keep]
        out_x = [out_x[g] for g in keep]
        out_mass = [out_mass[g] for g in keep]
        starts = list(itertools.accumulate(sizes, initial=0))
    if not out_x:
        raise InstanceError(f"no {kind} with positive mass")
    return tuple(out_x), tuple(out_mass), IndexMap(tuple(order), tuple(starts), tuple(masses))


def build_instance(
    sources: Sequence[tuple[int, int]],
    sinks: Sequence[tuple[int, int]],
    cost_model: CostModel = ABSOLUTE,
    *,
    max_bits: int | None = None,
) -> Instance:
    """Validate raw ``(coordinate, mass)`` lists and normalize them.

    Zero-mass entries are dropped, entries are sorted by coordinate and
    entries sharing a coordinate are merged. Python integers never overflow,
    so the capacity check only runs when ``max_bits`` is given (the compiled
    solver route uses ``max_bits=64`` internally).

    Raises InfeasibleError when total supply exceeds total demand,
    CapacityError when ``max_bits`` is too narrow, and InstanceError for
    negative or non-integer data or an empty side.
    """
    u, s, src_map = _merge(sources, "source")
    v, d, snk_map = _merge(sinks, "sink")
    S = tuple(itertools.accumulate(s, initial=0))
    D = tuple(itertools.accumulate(d, initial=0))
    if S[-1] > D[-1]:
        raise InfeasibleError(f"total supply {S[-1]} exceeds total demand {D[-1]}")
    inst = Instance(
        u=u,
        s=s,
        v=v,
        d=d,
        S=S,
        D=D,
        cost_model=cost_model,
        source_map=src_map,
        sink_map=snk_map,
    )
    if max_bits is not None and not inst.fits_bits(max_bits):
        raise CapacityError(
            f"capacity bound {inst.capacity_bound()} does not fit in {max_bits}-bit integers"
        )
    return inst
