"""Uniprocessor CPU-scheduling simulator with a dynamic-quantum round robin policy."""

from dqrrr.core import (
    ProcessSpec,
    Provenance,
    ScheduleTrace,
    TimeSlice,
    Workload,
    WorkloadError,
    build_workload,
    run_dispatch_loop,
)
from dqrrr.metrics import MetricsReport, compare, context_switches, evaluate
from dqrrr.policies import (
    PolicyConfig,
    interleave_min_max,
    median_quantum,
    schedule_dqrrr,
    schedule_fcfs,
    schedule_rr,
    schedule_sjf,
)

__all__ = [
    "MetricsReport",
    "PolicyConfig",
    "ProcessSpec",
    "Provenance",
    "ScheduleTrace",
    "TimeSlice",
    "Workload",
    "WorkloadError",
    "build_workload",
    "compare",
    "context_switches",
    "evaluate",
    "interleave_min_max",
    "median_quantum",
    "run_dispatch_loop",
    "schedule_dqrrr",
    "schedule_fcfs",
    "schedule_rr",
    "schedule_sjf",
]
