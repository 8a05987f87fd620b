"""Domain types and the dispatch machinery shared by every policy.

Time is measured in integer ticks. A simulation produces a
:class:`ScheduleTrace`: the ordered list of dispatches (slices), the
per-round quantum sequence for quantum-based policies, and the
completion tick of every process.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

if TYPE_CHECKING:
    from dqrrr.policies import PolicyConfig


class WorkloadError(ValueError):
    """Invalid process or workload definition."""

    def __init__(self, message: str, pid: int | None = None, line: int | None = None):
        self.pid = pid
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class ProcessSpec:
    pid: int
    arrival: int
    burst: int

    def __post_init__(self) -> None:
        for name in ("pid", "arrival", "burst"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise WorkloadError(f"P{self.pid}: {name} must be an integer, got {value!r}", pid=self.pid)
        if self.pid < 1:
            raise WorkloadError(f"pid must be positive, got {self.pid}", pid=self.pid)
        if self.arrival < 0:
            raise WorkloadError(f"P{self.pid}: arrival must be >= 0, got {self.arrival}", pid=self.pid)
        if self.burst < 1:
            raise WorkloadError(f"P{self.pid}: burst must be >= 1, got {self.burst}", pid=self.pid)


@dataclass(frozen=True)
class Provenance:
    """Where a workload came from: ``file``, ``generator``, ``table`` or ``inline``."""

    kind: str
    source: str = ""
    params: tuple[tuple[str, str], ...] = ()

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind, "source": self.source}
        if self.params:
            out["params"] = dict(self.params)
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "Provenance":
        params = tuple((str(k), str(v)) for k, v in data.get("params", {}).items())
        return cls(kind=data["kind"], source=data.get("source", ""), params=params)


INLINE = Provenance("inline")


@dataclass(frozen=True)
class Workload:
    processes: tuple[ProcessSpec, ...]
    # two workloads with the same processes are equal regardless of origin
    provenance: Provenance = field(default=INLINE, compare=False)

    def __post_init__(self) -> None:
        if not self.processes:
            raise WorkloadError("workload must contain at least one process")
        seen: set[int] = set()
        for p in self.processes:
            if p.pid in seen:
                raise WorkloadError(f"duplicate pid P{p.pid}", pid=p.pid)
            seen.add(p.pid)

    def __len__(self) -> int:
        return len(self.processes)

    def __iter__(self):
        return iter(self.processes)

    def by_pid(self) -> dict[int, ProcessSpec]:
        return {p.pid: p for p in self.processes}

    @property
    def total_burst(self) -> int:
        return sum(p.burst for p in self.processes)


def build_workload(specs: Iterable[ProcessSpec | tuple[int, int, int]],
                   provenance: Provenance = INLINE) -> Workload:
    """Validate ``specs`` into a :class:`Workload`, keeping their order.

    Plain ``(pid, arrival, burst)`` tuples are accepted as a convenience.
    """
    processes = tuple(s if isinstance(s, ProcessSpec) else ProcessSpec(*s) for s in specs)
    return Workload(processes, provenance)


@dataclass(frozen=True)
class TimeSlice:
    pid: int
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"invalid slice P{self.pid} [{self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class ScheduleTrace:
    slices: tuple[TimeSlice, ...]
    quantum_sequence: tuple[int, ...]
    completion: Mapping[int, int]
    workload: Workload
    policy_label: str

    @property
    def makespan(self) -> int:
        return self.slices[-1].end if self.slices else 0

    def idle_gaps(self) -> list[tuple[int, int]]:
        """Idle intervals ``[start, end)``, including any before the first slice."""
        gaps = []
        clock = 0
        for s in self.slices:
            if s.start > clock:
                gaps.append((clock, s.start))
            clock = s.end
        return gaps

    def check(self) -> None:
        """Raise ``AssertionError`` if any trace invariant is violated."""
        procs = self.workload.by_pid()
        work = dict.fromkeys(procs, 0)
        last_end: dict[int, int] = {}
        prev_end = 0
        for s in self.slices:
            assert s.pid in procs, f"unknown pid {s.pid}"
            assert s.start >= prev_end, f"slice {s} overlaps previous slice ending at {prev_end}"
            assert s.start >= procs[s.pid].arrival, f"slice {s} precedes arrival"
            work[s.pid] += s.length
            last_end[s.pid] = s.end
            prev_end = s.end
        for pid, p in procs.items():
            assert work[pid] == p.burst, f"P{pid} ran {work[pid]} ticks, burst {p.burst}"
            assert self.completion[pid] == last_end[pid], f"P{pid} completion mismatch"
        for gap_start, gap_end in self.idle_gaps():
            for pid, p in procs.items():
                assert not (p.arrival < gap_end and self.completion[pid] > gap_start), (
                    f"CPU idle over [{gap_start}, {gap_end}) while P{pid} was ready"
                )
        assert all(q >= 1 for q in self.quantum_sequence)


class Dispatcher:
    """Mutable simulation state for one run: clock, remaining work, emitted slices.

    Policies drive it with :meth:`dispatch` and :meth:`idle_until`; arrivals
    never interrupt a dispatch.
    """

    def __init__(self, workload: Workload, policy_label: str):
        self.workload = workload
        self.policy_label = policy_label
        self.clock = 0
        self.remaining = {p.pid: p.burst for p in workload}
        # arrival order, ties by pid
        self.pending = sorted(workload, key=lambda p: (p.arrival, p.pid))
        self.slices: list[TimeSlice] = []
        self.quanta: list[int] = []
        self.completion: dict[int, int] = {}

    def admit(self) -> list[ProcessSpec]:
        """Pop and return every pending process with ``arrival <= clock``."""
        n = 0
        while n < len(self.pending) and self.pending[n].arrival <= self.clock:
            n += 1
        arrived, self.pending = self.pending[:n], self.pending[n:]
        return arrived

    def idle_until_next_arrival(self) -> None:
        if self.pending and self.pending[0].arrival > self.clock:
            self.clock = self.pending[0].arrival

    def dispatch(self, pid: int, limit: int | None = None) -> int:
        """Run ``pid`` for ``min(limit, remaining)`` ticks; return ticks still owed."""
        run = self.remaining[pid] if limit is None else min(limit, self.remaining[pid])
        self.slices.append(TimeSlice(pid, self.clock, self.clock + run))
        self.clock += run
        self.remaining[pid] -= run
        if self.remaining[pid] == 0:
            self.completion[pid] = self.clock
        return self.remaining[pid]

    @property
    def done(self) -> bool:
        return len(self.completion) == len(self.remaining)

    def trace(self) -> ScheduleTrace:
        return ScheduleTrace(
            slices=tuple(self.slices),
            quantum_sequence=tuple(self.quanta),
            completion=dict(sorted(self.completion.items())),
            workload=self.workload,
            policy_label=self.policy_label,
        )


def run_dispatch_loop(workload: Workload, policy: "PolicyConfig") -> ScheduleTrace:
    """Simulate ``workload`` under ``policy`` and return the checked trace."""
    trace = policy.schedule(workload)
    trace.check()
    return trace


def slices_of(trace: ScheduleTrace, pid: int) -> Sequence[TimeSlice]:
    return [s for s in trace.slices if s.pid == pid]
