import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import workloads
from dqrrr.core import TimeSlice, build_workload
from dqrrr.policies import (
    PolicyConfig,
    interleave_min_max,
    median_quantum,
    schedule_dqrrr,
    schedule_fcfs,
    schedule_rr,
    schedule_sjf,
)
from dqrrr.workload_io import paper_workload
from oracles import dqrrr_ticks, floored_median, interleave_by_index, rr_ticks


def _procs(w):
    return [(p.pid, p.arrival, p.burst) for p in w]


@pytest.mark.parametrize("values, expected", [
    ([12, 21, 55, 105], 38),
    ([45, 30], 37),
    ([7], 7),
    ([35, 45, 60, 90, 105], 60),
])
def test_median_quantum(values, expected):
    assert median_quantum(values) == expected


def test_median_quantum_empty():
    with pytest.raises(ValueError):
        median_quantum([])


@settings(max_examples=300)
@given(st.lists(st.integers(1, 500), min_size=1, max_size=20), st.randoms())
def test_median_matches_statistics_and_is_order_free(values, rnd):
    shuffled = values[:]
    rnd.shuffle(shuffled)
    assert median_quantum(values) == median_quantum(shuffled) == floored_median(values)
    assert min(values) <= median_quantum(values) <= max(values)


@pytest.mark.parametrize("s, expected", [
    ([12, 21, 55, 105], [12, 105, 21, 55]),
    ([9], [9]),
    ([30, 42, 50, 85, 97], [30, 97, 42, 85, 50]),
    ([], []),
])
def test_interleave(s, expected):
    assert interleave_min_max(s) == expected


@given(st.lists(st.integers(1, 100), max_size=15))
def test_interleave_properties(values):
    s = sorted(values)
    o = interleave_min_max(s)
    assert sorted(o) == s
    assert o == interleave_by_index(s)
    if s:
        assert o[0] == min(s)
    if len(s) >= 2:
        assert o[1] == max(s)
    assert interleave_min_max([4] * len(s)) == [4] * len(s)


def test_dqrrr_illustration_first_round():
    trace = schedule_dqrrr(paper_workload("illustration"))
    assert trace.quantum_sequence == (38, 42, 25)
    assert [s.pid for s in trace.slices[:4]] == [3, 2, 1, 4]
    ran = {s.pid: s.length for s in trace.slices[:4]}
    bursts = {1: 21, 2: 105, 3: 12, 4: 55}
    assert {pid: bursts[pid] - ran[pid] for pid in bursts} == {1: 0, 2: 67, 3: 0, 4: 17}


def test_dqrrr_table_4_3():
    trace = schedule_dqrrr(paper_workload("t4.3"))
    assert trace.quantum_sequence == (60, 37, 8)
    assert trace.completion == {5: 35, 4: 140, 3: 260, 2: 327, 1: 335}


def test_dqrrr_table_4_9():
    assert schedule_dqrrr(paper_workload("t4.9")).quantum_sequence == (80, 57, 11, 4)


def test_dqrrr_late_arrival_waits_for_round_boundary():
    # P2 arrives at 2 but P1's singleton round (q=28) is not interrupted
    trace = schedule_dqrrr(paper_workload("t4.7"))
    assert trace.slices[0] == TimeSlice(1, 0, 28)
    assert trace.completion == {1: 28, 2: 63, 3: 179, 4: 291, 5: 305}


def test_dqrrr_keeps_order_without_arrivals():
    # round 2 of the increasing data set runs P5 before P4
    trace = schedule_dqrrr(paper_workload("t4.1"))
    assert [s.pid for s in trace.slices[5:]] == [5, 4, 5]


def test_dqrrr_singleton():
    trace = schedule_dqrrr(build_workload([(1, 0, 9)]))
    assert trace.quantum_sequence == (9,)
    assert trace.slices == (TimeSlice(1, 0, 9),)


def test_dqrrr_idle_gap():
    trace = schedule_dqrrr(build_workload([(1, 0, 4), (2, 10, 6)]))
    assert trace.slices == (TimeSlice(1, 0, 4), TimeSlice(2, 10, 16))
    assert trace.quantum_sequence == (4, 6)


def test_rr_table_4_1():
    trace = schedule_rr(paper_workload("t4.1"), 25)
    assert len(trace.slices) == 14
    assert trace.completion == {1: 130, 2: 147, 3: 172, 4: 282, 5: 304}


def test_rr_table_4_11():
    assert len(schedule_rr(paper_workload("t4.11"), 25).slices) == 13


def test_rr_arrival_queued_before_preempted():
    w = build_workload([(1, 0, 6), (2, 3, 2)])
    assert [s.pid for s in schedule_rr(w, 3).slices] == [1, 2, 1]
    # arriving exactly at the preemption tick still goes first
    w = build_workload([(1, 0, 6), (2, 4, 2), (3, 0, 4)])
    assert [s.pid for s in schedule_rr(w, 4).slices] == [1, 3, 2, 1]


def test_rr_rejects_bad_quantum():
    with pytest.raises(ValueError):
        schedule_rr(build_workload([(1, 0, 1)]), 0)
    with pytest.raises(ValueError):
        PolicyConfig("rr", 0)


def test_unknown_policy():
    with pytest.raises(ValueError, match="unknown policy"):
        PolicyConfig("priority")


def test_fcfs_examples():
    assert schedule_fcfs(build_workload([(1, 0, 30), (2, 0, 42)])).slices == (
        TimeSlice(1, 0, 30), TimeSlice(2, 30, 72))
    assert schedule_fcfs(build_workload([(1, 5, 10)])).slices == (TimeSlice(1, 5, 15),)
    assert schedule_fcfs(build_workload([(1, 0, 3), (2, 10, 2)])).slices == (
        TimeSlice(1, 0, 3), TimeSlice(2, 10, 12))


def test_fcfs_orders_by_arrival_then_pid():
    w = build_workload([(3, 2, 1), (2, 0, 1), (1, 0, 1)])
    assert [s.pid for s in schedule_fcfs(w).slices] == [1, 2, 3]


@pytest.mark.parametrize("rows, order", [
    ([(1, 0, 30), (2, 0, 42), (3, 0, 12)], [3, 1, 2]),
    ([(1, 0, 5), (2, 0, 5)], [1, 2]),
    ([(1, 0, 100), (2, 1, 1)], [1, 2]),
])
def test_sjf_examples(rows, order):
    assert [s.pid for s in schedule_sjf(build_workload(rows)).slices] == order


@settings(max_examples=300, deadline=None)
@given(workloads(), st.integers(1, 30))
def test_rr_matches_tick_oracle(w, q):
    out, comp = rr_ticks(_procs(w), q)
    trace = schedule_rr(w, q)
    assert [(s.pid, s.start, s.end) for s in trace.slices] == out
    assert trace.completion == comp


@settings(max_examples=300, deadline=None)
@given(workloads())
def test_dqrrr_matches_tick_oracle(w):
    out, comp, quanta = dqrrr_ticks(_procs(w))
    trace = schedule_dqrrr(w)
    assert [(s.pid, s.start, s.end) for s in trace.slices] == out
    assert trace.completion == comp
    assert list(trace.quantum_sequence) == quanta


def _rounds(trace):
    """Split a DQRRR trace into rounds using its quantum sequence."""
    remaining = {p.pid: p.burst for p in trace.workload}
    arrival = {p.pid: p.arrival for p in trace.workload}
    slices = list(trace.slices)
    rounds = []
    i = 0
    for q in trace.quantum_sequence:
        t = slices[i].start
        queued = [pid for pid in remaining if remaining[pid] > 0 and arrival[pid] <= t]
        assert q == median_quantum([remaining[pid] for pid in queued])
        chunk = slices[i:i + len(queued)]
        assert sorted(s.pid for s in chunk) == sorted(queued)
        for s in chunk:
            assert s.length == min(q, remaining[s.pid])
            remaining[s.pid] -= s.length
        rounds.append(chunk)
        i += len(queued)
    assert i == len(slices)
    return rounds


@settings(max_examples=300, deadline=None)
@given(workloads())
def test_dqrrr_quantum_is_median_of_round(w):
    _rounds(schedule_dqrrr(w))


@settings(max_examples=200, deadline=None)
@given(workloads(zero_arrivals=True))
def test_dqrrr_first_round_interleaved(w):
    trace = schedule_dqrrr(w)
    first = trace.slices[:len(w)]
    ordered = sorted(w, key=lambda p: (p.burst, p.arrival, p.pid))
    assert [s.pid for s in first] == [p.pid for p in interleave_min_max(ordered)]


@settings(max_examples=200, deadline=None)
@given(workloads(), st.integers(1, 30))
def test_rr_circular_fairness(w, q):
    # between two dispatches of a process, everything queued at the first dispatch runs once
    trace = schedule_rr(w, q)
    slices = trace.slices
    for i, s in enumerate(slices):
        nxt = next((j for j in range(i + 1, len(slices)) if slices[j].pid == s.pid), None)
        if nxt is None:
            continue
        between = [x.pid for x in slices[i + 1:nxt]]
        assert len(between) == len(set(between))
        waiting = {
            p.pid for p in w
            if p.pid != s.pid and p.arrival <= s.start and trace.completion[p.pid] > s.start
        }
        assert waiting <= set(between)
