"""Scheduling policies: dynamic-quantum re-adjusted round robin, RR, FCFS, SJF."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from dqrrr.core import Dispatcher, ScheduleTrace, Workload

DEFAULT_QUANTUM = 25
KINDS = ("dqrrr", "rr", "fcfs", "sjf")

T = TypeVar("T")


def median_quantum(remaining_bursts: Sequence[int]) -> int:
    """Median of the remaining bursts, floored to an integer tick count.

    >>> median_quantum([21, 105, 12, 55])
    38
    >>> median_quantum([45, 30])
    37
    """
    if not remaining_bursts:
        raise ValueError("median_quantum needs at least one burst")
    ys = sorted(remaining_bursts)
    n = len(ys)
    if n % 2:
        return ys[n // 2]
    return (ys[n // 2 - 1] + ys[n // 2]) // 2


def interleave_min_max(sorted_ascending: Sequence[T]) -> list[T]:
    """Reorder an ascending sequence as smallest, largest, 2nd smallest, 2nd largest, ..."""
    s = list(sorted_ascending)
    out: list[T] = []
    lo, hi = 0, len(s) - 1
    while lo <= hi:
        out.append(s[lo])
        if lo != hi:
            out.append(s[hi])
        lo += 1
        hi -= 1
    return out


def schedule_dqrrr(workload: Workload) -> ScheduleTrace:
    """Round robin whose quantum is re-derived every round from the queue's median.

    The queue is sorted by remaining burst and interleaved min/max when it is
    first formed and whenever new arrivals join it at a round boundary;
    otherwise the order from the previous round is kept. Arrivals during a
    round wait for the next boundary.
    """
    d = Dispatcher(workload, "DQRRR")
    arrival = {p.pid: p.arrival for p in workload}
    queue: list[int] = []
    while not d.done:
        if not queue:
            d.idle_until_next_arrival()
        arrived = d.admit()
        if arrived:
            queue.extend(p.pid for p in arrived)
            queue.sort(key=lambda pid: (d.remaining[pid], arrival[pid], pid))
            queue = interleave_min_max(queue)
        q = median_quantum([d.remaining[pid] for pid in queue])
        d.quanta.append(q)
        queue = [pid for pid in queue if d.dispatch(pid, q) > 0]
    return d.trace()


def schedule_rr(workload: Workload, quantum: int = DEFAULT_QUANTUM) -> ScheduleTrace:
    """Classic round robin over a FIFO circular queue with a fixed quantum.

    A process arriving by the end of a slice is queued ahead of the process
    that slice preempted.
    """
    if quantum < 1:
        raise ValueError(f"quantum must be >= 1, got {quantum}")
    d = Dispatcher(workload, f"RR(q={quantum})")
    queue = [p.pid for p in d.admit()]
    while not d.done:
        if not queue:
            d.idle_until_next_arrival()
            queue.extend(p.pid for p in d.admit())
        pid = queue.pop(0)
        left = d.dispatch(pid, quantum)
        queue.extend(p.pid for p in d.admit())
        if left:
            queue.append(pid)
    return d.trace()


def _run_to_completion(workload: Workload, label: str,
                       pick: Callable[[list], object]) -> ScheduleTrace:
    d = Dispatcher(workload, label)
    ready: list = []
    while not d.done:
        if not ready:
            d.idle_until_next_arrival()
        ready.extend(d.admit())
        p = pick(ready)
        ready.remove(p)
        d.dispatch(p.pid)
    return d.trace()


def schedule_fcfs(workload: Workload) -> ScheduleTrace:
    """Non-preemptive, in arrival order (ties by pid)."""
    return _run_to_completion(workload, "FCFS", lambda ready: ready[0])


def schedule_sjf(workload: Workload) -> ScheduleTrace:
    """Non-preemptive shortest burst first among arrived processes; ties FCFS then pid."""
    return _run_to_completion(
        workload, "SJF", lambda ready: min(ready, key=lambda p: (p.burst, p.arrival, p.pid))
    )


@dataclass(frozen=True)
class PolicyConfig:
    kind: str
    fixed_quantum: int = DEFAULT_QUANTUM

    def __post_init__(self) -> None:
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown policy {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        if kind == "rr" and self.fixed_quantum < 1:
            raise ValueError(f"quantum must be >= 1, got {self.fixed_quantum}")

    @property
    def label(self) -> str:
        return f"RR(q={self.fixed_quantum})" if self.kind == "rr" else self.kind.upper()

    def schedule(self, workload: Workload) -> ScheduleTrace:
        if self.kind == "dqrrr":
            return schedule_dqrrr(workload)
        if self.kind == "rr":
            return schedule_rr(workload, self.fixed_quantum)
        if self.kind == "fcfs":
            return schedule_fcfs(workload)
        return schedule_sjf(workload)
