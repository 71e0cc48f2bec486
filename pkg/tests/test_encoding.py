import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uot1d import (
    EncodingError,
    FlowError,
    build_instance,
    check_monotonic,
    check_no_hole,
    decode,
    encode,
    feasibility_violations,
    flow_cost,
    solve_balanced,
)
from uot1d.encoding import check_encoding

from conftest import instances, structured_flows


def unit_instance(s, d):
    return build_instance([(k, x) for k, x in enumerate(s)], [(k, x) for k, x in enumerate(d)])


@pytest.mark.parametrize(
    "s, d, p, expected",
    [
        ([1, 1], [2, 2], [0, 2], ((0, 0, 1), (1, 1, 1))),
        ([1, 1], [2, 2], [0, 0], ((0, 0, 1), (1, 0, 1))),
        ([1], [1], [0], ((0, 0, 1),)),
    ],
)
def test_decode_examples(s, d, p, expected):
    assert decode(unit_instance(s, d), p).triples == expected


@pytest.mark.parametrize(
    "s, d, flow, expected",
    [
        ([1, 1], [2, 2], [(0, 0, 1), (1, 1, 1)], (0, 1)),
        ([1], [1, 1], [(0, 1, 1)], (1,)),
        # a source spanning two sinks with slack left in the first one
        ([2], [2, 2], [(0, 0, 1), (0, 1, 1)], (1,)),
    ],
)
def test_encode_examples(s, d, flow, expected):
    inst = unit_instance(s, d)
    assert encode(inst, flow) == expected
    assert decode(inst, expected).triples == tuple(flow)


def test_encode_balanced_is_zero():
    inst = unit_instance([2, 1, 3], [1, 4, 1])
    flow = solve_balanced(inst.s, inst.d)
    assert encode(inst, flow) == (0, 0, 0)


@pytest.mark.parametrize("p", [[1], [-1], [0, 0, 0]])
def test_invalid_encoding(p):
    inst = unit_instance([1], [1])
    with pytest.raises(EncodingError):
        decode(inst, p)


def test_decreasing_encoding_rejected():
    inst = unit_instance([1, 1], [2, 2])
    with pytest.raises(EncodingError):
        check_encoding(inst, [2, 1])


def test_encode_rejects_bad_flows():
    inst = unit_instance([1, 1], [1, 1])
    with pytest.raises(FlowError):
        encode(inst, [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(FlowError):
        encode(inst, [(0, 0, 1)])
    holed = unit_instance([2], [1, 1, 1])
    with pytest.raises(FlowError):
        encode(holed, [(0, 0, 1), (0, 2, 1)])


def test_flow_cost_examples():
    assert flow_cost(build_instance([(0, 1)], [(0, 1)]), [(0, 0, 1)]) == 0
    assert flow_cost(build_instance([(5, 1)], [(0, 1), (6, 1)]), [(0, 1, 1)]) == 1
    inst = build_instance([(1, 1), (2, 2)], [(0, 1), (2, 2), (10, 5)])
    assert flow_cost(inst, [(0, 0, 1), (1, 1, 2)]) == 1
    with pytest.raises(IndexError):
        flow_cost(inst, [(2, 0, 1)])


def test_monotonic_examples():
    assert not check_monotonic([(0, 1, 1), (1, 0, 1)])
    assert check_monotonic([(0, 0, 1), (1, 1, 1)])
    assert check_monotonic([])


def test_no_hole_examples():
    inst = unit_instance([2], [1, 1, 1])
    assert not check_no_hole(inst, [(0, 0, 1), (0, 2, 1)])
    assert check_no_hole(inst, [(0, 0, 1), (0, 1, 1)])
    assert check_no_hole(inst, [(0, 1, 1)])
    with pytest.raises(FlowError):
        check_no_hole(unit_instance([1, 1], [1, 1]), [(0, 1, 1), (1, 0, 1)])


def test_feasibility_messages():
    inst = unit_instance([2], [1, 1])
    assert feasibility_violations(inst, [(0, 0, 1), (0, 1, 1)]) == []
    assert feasibility_violations(inst, [(0, 0, 2)])
    assert feasibility_violations(inst, [(0, 0, 1)])


def test_enumerator_matches_brute_force():
    # the direct search agrees with filtering every integer matrix
    for s, d in [([1, 2], [2, 1, 1]), ([2, 1], [1, 1, 2]), ([1, 1, 1], [2, 2])]:
        inst = unit_instance(s, d)
        cells = [(i, j) for i in range(inst.n) for j in range(inst.m)]
        brute = set()
        for amounts in itertools.product(range(3), repeat=len(cells)):
            triples = tuple((i, j, x) for (i, j), x in zip(cells, amounts) if x)
            if feasibility_violations(inst, triples) or not check_monotonic(triples):
                continue
            if check_no_hole(inst, triples):
                brute.add(triples)
        assert set(structured_flows(inst)) == brute


@settings(max_examples=150, deadline=None)
@given(instances(max_n=8, max_m=8).filter(lambda inst: max(inst.s) <= 3 and max(inst.d) <= 3))
def test_round_trip_flows(inst):
    for flow in structured_flows(inst, limit=3000):
        assert decode(inst, encode(inst, flow)).triples == flow


@st.composite
def encodings(draw):
    inst = draw(instances())
    slack = inst.D[-1] - inst.S[-1]
    p = sorted(draw(st.lists(st.integers(0, slack), min_size=inst.n, max_size=inst.n)))
    return inst, p


@given(encodings())
def test_round_trip_encodings(case):
    inst, p = case
    flow = decode(inst, p)
    assert feasibility_violations(inst, flow.triples) == []
    assert check_monotonic(flow.triples)
    assert check_no_hole(inst, flow.triples)
    q = encode(inst, flow)
    check_encoding(inst, q)
    assert decode(inst, q) == flow
