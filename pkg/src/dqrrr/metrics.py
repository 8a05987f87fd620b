"""Context switches, waiting and turnaround times computed from a trace.

Two conventions are supported. ``paper`` measures both quantities from
tick 0 (waiting = completion - burst, turnaround = completion), which is
how the published comparison tables were computed. ``standard`` measures
from each process's arrival, as in most textbooks.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Mapping, Sequence

from dqrrr.core import ScheduleTrace

CONVENTIONS = ("paper", "standard")


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected 'paper' or 'standard'")


def format_avg(value: Fraction) -> str:
    """Render an exact average with one fractional digit (half-up)."""
    d = Decimal(value.numerator) / Decimal(value.denominator)
    return str(d.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def context_switches(trace: ScheduleTrace) -> int:
    """Dispatch boundaries: one per slice after the first, even for the same pid."""
    return max(len(trace.slices) - 1, 0)


def _origin(trace: ScheduleTrace, convention: str) -> dict[int, int]:
    _check_convention(convention)
    if convention == "paper":
        return {p.pid: 0 for p in trace.workload}
    return {p.pid: p.arrival for p in trace.workload}


def waiting_times(trace: ScheduleTrace, convention: str = "paper") -> tuple[dict[int, int], Fraction]:
    origin = _origin(trace, convention)
    per = {p.pid: trace.completion[p.pid] - origin[p.pid] - p.burst for p in trace.workload}
    return per, Fraction(sum(per.values()), len(per))


def turnaround_times(trace: ScheduleTrace, convention: str = "paper") -> tuple[dict[int, int], Fraction]:
    origin = _origin(trace, convention)
    per = {p.pid: trace.completion[p.pid] - origin[p.pid] for p in trace.workload}
    return per, Fraction(sum(per.values()), len(per))


@dataclass(frozen=True)
class MetricsReport:
    policy_label: str
    context_switches: int
    waiting: Mapping[int, int]
    turnaround: Mapping[int, int]
    avg_waiting: Fraction
    avg_turnaround: Fraction
    convention: str
    quantum_sequence: tuple[int, ...]

    @property
    def quantum_description(self) -> str:
        if self.policy_label.startswith("RR(q="):
            return self.policy_label[5:-1]
        return ",".join(map(str, self.quantum_sequence)) or "-"


def evaluate(trace: ScheduleTrace, convention: str = "paper") -> MetricsReport:
    waiting, avg_w = waiting_times(trace, convention)
    turnaround, avg_t = turnaround_times(trace, convention)
    return MetricsReport(
        policy_label=trace.policy_label,
        context_switches=context_switches(trace),
        waiting=waiting,
        turnaround=turnaround,
        avg_waiting=avg_w,
        avg_turnaround=avg_t,
        convention=convention,
        quantum_sequence=trace.quantum_sequence,
    )


@dataclass(frozen=True)
class ComparisonRow:
    policy: str
    quantum: str
    cs: int
    awt: str
    atat: str


def compare(reports: Sequence[MetricsReport]) -> list[ComparisonRow]:
    if not reports:
        return []
    conventions = {r.convention for r in reports}
    if len(conventions) > 1:
        raise ValueError(f"cannot compare reports with mixed conventions: {sorted(conventions)}")
    return [
        ComparisonRow(r.policy_label, r.quantum_description, r.context_switches,
                      format_avg(r.avg_waiting), format_avg(r.avg_turnaround))
        for r in reports
    ]


def format_comparison(rows: Sequence[ComparisonRow]) -> str:
    """Side-by-side table, one column per policy, like the published comparisons."""
    header = ["algorithms"] + [r.policy for r in rows]
    body = [
        ["q_t"] + [r.quantum for r in rows],
        ["CS"] + [str(r.cs) for r in rows],
        ["awt"] + [r.awt for r in rows],
        ["atat"] + [r.atat for r in rows],
    ]
    table = [header] + body
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"
