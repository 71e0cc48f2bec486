"""Numba kernel for the fast solver (absolute and squared models, int64).

Mirrors ``fast._solve_python`` step for step. Stored positions never exceed
the current ``p``, so the ordered map reduces to a max-heap of
``(position, value)`` pairs in which equal positions are summed when they
reach the top.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .instance import Instance


@njit(cache=True, inline="always")
def _phi(x, squared):
    if squared:
        return x * x
    return x if x >= 0 else -x


@njit(cache=True, inline="always")
def _push(keys, vals, size, key, val):
    if size == keys.size:
        grown_k = np.empty(2 * keys.size, np.int64)
        grown_v = np.empty(2 * keys.size, np.int64)
        grown_k[:size] = keys[:size]
        grown_v[:size] = vals[:size]
        keys, vals = grown_k, grown_v
    k = size
    while k > 0:
        parent = (k - 1) >> 1
        if keys[parent] >= key:
            break
        keys[k] = keys[parent]
        vals[k] = vals[parent]
        k = parent
    keys[k] = key
    vals[k] = val
    return keys, vals, size + 1


@njit(cache=True, inline="always")
def _pop(keys, vals, size):
    size -= 1
    key = keys[size]
    val = vals[size]
    k = 0
    while True:
        a = 2 * k + 1
        if a >= size:
            break
        if a + 1 < size and keys[a + 1] > keys[a]:
            a += 1
        if key >= keys[a]:
            break
        keys[k] = keys[a]
        vals[k] = vals[a]
        k = a
    if size > 0:
        keys[k] = key
        vals[k] = val
    return size


@njit(cache=True, inline="always")
def _take(keys, vals, size, pos):
    """Remove every entry stored at ``pos`` (the top) and return their sum."""
    total = 0
    while size > 0 and keys[0] == pos:
        total += vals[0]
        size = _pop(keys, vals, size)
    return total, size


@njit(cache=True, inline="always")
def _bisect_left(arr, x):
    lo, hi = 0, arr.size
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True, inline="always")
def _bisect_right(arr, x):
    lo, hi = 0, arr.size
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _kernel(u, s, v, d, squared):
    n = u.size
    m = v.size
    S = np.zeros(n + 1, np.int64)
    D = np.zeros(m + 1, np.int64)
    for i in range(n):
        S[i + 1] = S[i] + s[i]
    for k in range(m):
        D[k + 1] = D[k] + d[k]
    keys = np.empty(1024, np.int64)
    vals = np.empty(1024, np.int64)
    size = 0
    enc = np.empty(n, np.int64)
    counters = np.zeros(3, np.int64)  # iterations, sink events, delta events
    j = 0
    p = np.int64(0)
    total = np.int64(0)

    for i in range(n):
        ui = u[i]
        # leftmost minimizer of a unimodal row
        lo, hi = 0, m - 1
        while lo < hi:
            mid = (lo + hi) >> 1
            if _phi(ui - v[mid + 1], squared) >= _phi(ui - v[mid], squared):
                hi = mid
            else:
                lo = mid + 1
        o = lo
        if o > j:
            for l in range(j, o):
                g = _phi(ui - v[l], squared) - _phi(ui - v[l + 1], squared)
                counters[1] += 1
                if g != 0:
                    keys, vals, size = _push(keys, vals, size, D[l + 1] - S[i], g)
        if i > 0:
            up = u[i - 1]
            if squared:
                a, b = 0, m - 1
            else:
                a = max(_bisect_right(v, up) - 1, 0)
                b = min(_bisect_left(v, ui), m - 1)
            a = max(a, _bisect_left(D, S[i]) - 1)
            b = min(b, j)
            for l in range(a, b):
                g = (_phi(up - v[l + 1], squared) + _phi(ui - v[l], squared)
                     - _phi(up - v[l], squared) - _phi(ui - v[l + 1], squared))
                if g != 0:
                    counters[2] += 1
                    keys, vals, size = _push(keys, vals, size, D[l + 1] - S[i], g)
        if o > j:
            j = o
        if D[j] - S[i] > p:
            p = D[j] - S[i]
        end = S[i + 1]
        total += _phi(ui - v[j], squared) * (min(end + p, D[j + 1]) - (S[i] + p))

        while p > D[j + 1] - end:
            counters[0] += 1
            cij = _phi(ui - v[j], squared)
            g, size = _take(keys, vals, size, p)
            if j == m - 1:
                left = True
            elif p == 0:
                left = False
            else:
                left = g + cij < _phi(ui - v[j + 1], squared)
            if left:
                floor = max(D[j + 1] - end, 0)
                target = floor
                # land on the next position whose entries do not cancel out
                while size > 0 and keys[0] > floor:
                    top = keys[0]
                    h, size = _take(keys, vals, size, top)
                    if h != 0:
                        keys, vals, size = _push(keys, vals, size, top, h)
                        target = top
                        break
                total += (p - target) * (g + cij)
                p = target
                if g != 0:
                    keys, vals, size = _push(keys, vals, size, p, g)
            else:
                if g != 0:
                    keys, vals, size = _push(keys, vals, size, p, g)
                cnext = _phi(ui - v[j + 1], squared)
                counters[1] += 1
                if cij != cnext:
                    pos = min(D[j + 1] - S[i], p)
                    keys, vals, size = _push(keys, vals, size, pos, cij - cnext)
                j += 1
                total += cnext * (min(end + p, D[j + 1]) - D[j])
        enc[i] = p

    for i in range(n - 2, -1, -1):
        if enc[i] > enc[i + 1]:
            enc[i] = enc[i + 1]
    return enc, total, counters


def solve_compiled(inst: Instance, stats) -> tuple[tuple[int, ...], int]:
    enc, total, counters = _kernel(
        np.asarray(inst.u, np.int64),
        np.asarray(inst.s, np.int64),
        np.asarray(inst.v, np.int64),
        np.asarray(inst.d, np.int64),
        inst.cost_model.kind == "squared",
    )
    stats.iterations += int(counters[0])
    stats.sink_events += int(counters[1])
    stats.delta_events += int(counters[2])
    return tuple(enc.tolist()), int(total)
