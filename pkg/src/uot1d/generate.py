"""Seeded random instances."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = ["random_raw_instance"]


def random_raw_instance(
    seed,
    n: int,
    m: int,
    coord_max: int,
    mass_max: int,
    factor: float | str | Fraction = 1,
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Draw raw ``(coordinate, mass)`` lists for sources and sinks.

    Coordinates are uniform in ``[-coord_max, coord_max]`` (duplicates are
    possible), masses uniform in ``[1, mass_max]``. If total demand falls
    short of ``ceil(factor * total_supply)``, every demand is multiplied by
    the smallest integer that closes the gap. ``seed`` is anything
    ``numpy.random.default_rng`` accepts.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if coord_max < 0 or mass_max < 1:
        raise ValueError("coord_max must be >= 0 and mass_max >= 1")
    factor = Fraction(str(factor)) if isinstance(factor, float) else Fraction(factor)
    if factor < 1:
        raise ValueError("demand surplus factor must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.integers(-coord_max, coord_max, size=n, endpoint=True).tolist()
    s = rng.integers(1, mass_max, size=n, endpoint=True).tolist()
    v = rng.integers(-coord_max, coord_max, size=m, endpoint=True).tolist()
    d = rng.integers(1, mass_max, size=m, endpoint=True).tolist()
    target = math.ceil(factor * sum(s))
    total = sum(d)
    if total < target:
        k = -(-target // total)
        d = [x * k for x in d]
    return list(zip(u, s)), list(zip(v, d))
