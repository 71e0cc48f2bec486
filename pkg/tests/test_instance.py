import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uot1d import (
    ABSOLUTE,
    SQUARED,
    CapacityError,
    CostModel,
    InfeasibleError,
    InstanceError,
    build_instance,
)

from conftest import instances, small_instance


def test_identity_case():
    inst = build_instance([(0, 1)], [(0, 1)])
    assert (inst.n, inst.m) == (1, 1)
    assert inst.S == (0, 1)
    assert inst.D == (0, 1)


def test_sort_and_merge():
    inst = build_instance([(2, 1), (2, 2), (0, 1)], [(0, 5)])
    assert inst.u == (0, 2)
    assert inst.s == (1, 3)
    assert inst.S == (0, 1, 4)
    # input entries 0 and 1 were merged into node 1, in input order
    assert inst.source_map.members(1) == [(0, 1), (1, 2)]
    assert inst.source_map.members(0) == [(2, 1)]


def test_infeasible():
    with pytest.raises(InfeasibleError):
        build_instance([(0, 3)], [(0, 2)])


def test_zero_mass_dropped():
    inst = build_instance([(1, 0), (3, 2)], [(0, 0), (4, 2), (9, 1)])
    assert inst.u == (3,)
    assert inst.v == (4, 9)
    assert inst.sink_map.n_raw == 3


@pytest.mark.parametrize(
    "sources, sinks",
    [
        ([(0, -1)], [(0, 1)]),
        ([(0, 0)], [(0, 1)]),
        ([], [(0, 1)]),
        ([(0, 1)], [(0, 0)]),
        ([(0.5, 1)], [(0, 1)]),
        ([(0, True)], [(0, 1)]),
    ],
)
def test_rejected_inputs(sources, sinks):
    with pytest.raises(InstanceError):
        build_instance(sources, sinks)


def test_capacity_check_only_on_request():
    big = 10**30
    inst = build_instance([(0, big)], [(big, big)])
    assert not inst.fits_bits(64)
    with pytest.raises(CapacityError):
        build_instance([(0, big)], [(big, big)], max_bits=64)


@pytest.mark.parametrize(
    "model, ui, vj, expected",
    [(ABSOLUTE, 5, 0, 5), (ABSOLUTE, 5, 5, 0), (SQUARED, 3, 1, 4)],
)
def test_cost_examples(model, ui, vj, expected):
    inst = build_instance([(ui, 1)], [(vj, 1)], model)
    assert inst.cost(0, 0) == expected


def test_cost_index_range():
    inst = build_instance([(0, 1)], [(0, 1)])
    with pytest.raises(IndexError):
        inst.cost(1, 0)
    with pytest.raises(IndexError):
        inst.delta(0, 0)


def test_delta_example():
    inst = build_instance([(0, 1), (2, 1)], [(1, 1), (3, 1)])
    assert inst.delta(0, 0) == 2


@pytest.mark.parametrize(
    "u, v, expected",
    [([0, 2], [1, 3], [0]), ([0, 1], [5, 6], []), ([0, 10], [1, 2, 3], [0, 1])],
)
def test_nonzero_delta_range_examples(u, v, expected):
    inst = build_instance([(x, 1) for x in u], [(x, 5) for x in v])
    assert list(inst.nonzero_delta_range(0)) == expected


def test_nonzero_delta_range_needs_absolute():
    inst = build_instance([(0, 1), (1, 1)], [(0, 2), (1, 2)], SQUARED)
    with pytest.raises(NotImplementedError):
        inst.nonzero_delta_range(0)


@pytest.mark.parametrize("ui, v, expected", [(5, [0, 6], 1), (0, [0], 0), (3, [1, 5], 0)])
def test_best_sink_examples(ui, v, expected):
    inst = build_instance([(ui, 1)], [(x, 1) for x in v])
    assert inst.best_sink(0) == expected


def test_custom_model():
    model = CostModel.custom(lambda x: max(x, -2 * x))
    inst = build_instance([(0, 1)], [(3, 1), (-3, 1)], model)
    # sinks are sorted, so sink 0 sits at -3
    assert inst.cost(0, 0) == 3
    assert inst.cost(0, 1) == 6
    assert CostModel.from_name("l1") == ABSOLUTE
    with pytest.raises(ValueError):
        CostModel.from_name("cubic")


def brute_nonzero(inst):
    return {(i, j) for i in range(inst.n - 1) for j in range(inst.m - 1) if inst.delta(i, j)}


@given(instances(max_n=20, max_m=20))
def test_delta_count_and_range(inst):
    nz = brute_nonzero(inst)
    if inst.n >= 2 and inst.m >= 2:
        assert len(nz) <= inst.n + inst.m - 3
    for i in range(inst.n - 1):
        assert set(inst.nonzero_delta_range(i)) == {j for k, j in nz if k == i}


@given(instances(max_n=20, max_m=20))
def test_delta_staircase(inst):
    # a nonzero entry rules out nonzero entries strictly to its lower left and upper right
    nz = brute_nonzero(inst)
    for i, j in nz:
        for k, l in nz:
            assert not (k > i and l < j)
            assert not (k < i and l > j)


@given(instances(max_n=10, max_m=10))
def test_best_sink_is_leftmost_minimizer(inst):
    for i in range(inst.n):
        row = [inst.cost(i, j) for j in range(inst.m)]
        assert inst.best_sink(i) == row.index(min(row))


@given(instances(), st.sampled_from([ABSOLUTE, SQUARED]))
def test_build_is_idempotent(inst, model):
    again = build_instance(list(zip(inst.u, inst.s)), list(zip(inst.v, inst.d)), model)
    for name in ("u", "s", "v", "d", "S", "D"):
        assert getattr(again, name) == getattr(inst, name)


@given(instances(), st.integers(-1000, 1000), st.sampled_from([ABSOLUTE, SQUARED]))
def test_translation_invariance(inst, t, model):
    inst = build_instance(list(zip(inst.u, inst.s)), list(zip(inst.v, inst.d)), model)
    moved = build_instance(
        [(x + t, w) for x, w in zip(inst.u, inst.s)],
        [(x + t, w) for x, w in zip(inst.v, inst.d)],
        model,
    )
    for i in range(inst.n):
        for j in range(inst.m):
            assert inst.cost(i, j) == moved.cost(i, j) >= 0


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_expand_flow_preserves_raw_masses(seed):
    from uot1d import solve

    inst = small_instance(seed, coord_max=3)
    flow = solve(inst)
    raw = inst.expand_flow(flow.triples)
    sent = [0] * inst.source_map.n_raw
    got = [0] * inst.sink_map.n_raw
    for i, j, x in raw:
        sent[i] += x
        got[j] += x
    assert sent == list(inst.source_map.raw_mass)
    assert all(g <= cap for g, cap in zip(got, inst.sink_map.raw_mass))
