import random

from hypothesis import strategies as st

from uot1d import ABSOLUTE, build_instance
from uot1d.generate import random_raw_instance

FACTORS = (1, 1.5, 3)


def small_instance(seed, *, n_max=8, m_max=8, coord_max=20, mass_max=4, model=ABSOLUTE,
                   n_min=1, m_min=1):
    """One instance of the small randomized suite, fully determined by ``seed``."""
    pick = random.Random(seed)
    n = pick.randint(n_min, n_max)
    m = pick.randint(m_min, m_max)
    factor = pick.choice(FACTORS)
    sources, sinks = random_raw_instance(seed, n, m, coord_max, mass_max, factor)
    return build_instance(sources, sinks, model)


def structured_flows(inst, limit=None):
    """Every feasible monotonic flow without holes, by direct search.

    Works on the flow matrix itself: each source picks a run of consecutive
    sinks starting no earlier than where the previous source ended, fills
    every sink strictly inside the run completely, and respects residual
    capacities.
    """
    n, m = inst.n, inst.m
    left = list(inst.d)
    out = []
    current = []

    def runs(i, first):
        s = inst.s[i]
        for a in range(first, m):
            # single-sink run
            if left[a] >= s:
                yield [(a, s)]
            # multi-sink runs a..b with a, b partial and interior full
            for b in range(a + 1, m):
                interior = sum(inst.d[a + 1:b])
                if any(left[k] != inst.d[k] for k in range(a + 1, b)):
                    break
                rest = s - interior
                if rest < 2:
                    break
                for xa in range(1, min(left[a], rest - 1) + 1):
                    xb = rest - xa
                    if xb <= left[b]:
                        yield [(a, xa)] + [(k, inst.d[k]) for k in range(a + 1, b)] + [(b, xb)]

    def dfs(i, first):
        if limit is not None and len(out) >= limit:
            return
        if i == n:
            out.append(tuple(sorted(current)))
            return
        for run in runs(i, first):
            for k, x in run:
                left[k] -= x
                current.append((i, k, x))
            dfs(i + 1, run[-1][0])
            for k, x in run:
                left[k] += x
                current.pop()

    dfs(0, 0)
    return out


coords = st.integers(-30, 30)
masses = st.integers(0, 5)


@st.composite
def instances(draw, max_n=8, max_m=8, model=ABSOLUTE):
    sources = draw(st.lists(st.tuples(coords, st.integers(1, 5)), min_size=1, max_size=max_n))
    sinks = draw(st.lists(st.tuples(coords, masses), min_size=1, max_size=max_m))
    supply = sum(x for _, x in sources)
    extra = draw(st.integers(0, 10))
    sinks.append((draw(coords), max(supply - sum(x for _, x in sinks), 0) + extra))
    return build_instance(sources, sinks, model)
