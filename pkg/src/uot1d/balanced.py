"""Greedy solver for balanced 1D transport on coordinate-sorted masses."""

from __future__ import annotations

from typing import Sequence

from .errors import InstanceError

__all__ = ["solve_balanced"]


def solve_balanced(supplies: Sequence[int], demands: Sequence[int]) -> list[tuple[int, int, int]]:
    """Ship mass in order with two pointers and return ``(i, j, amount)`` triples.

    Zero masses are allowed and skipped. The result is monotonic and has no
    hole, and for sorted 1D points it is an optimal plan. Runs in O(n + m).
    """
    if sum(supplies) != sum(demands):
        raise InstanceError("balanced solve needs equal supply and demand totals")
    out = []
    n, m = len(supplies), len(demands)
    i = j = 0
    a = supplies[0] if n else 0
    b = demands[0] if m else 0
    while i < n and j < m:
        if a == 0:
            i += 1
            if i < n:
                a = supplies[i]
            continue
        if b == 0:
            j += 1
            if j < m:
                b = demands[j]
            continue
        x = a if a < b else b
        out.append((i, j, x))
        a -= x
        b -= x
    return out
