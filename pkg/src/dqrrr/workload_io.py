"""Workload CSV parsing/serialization, seeded generation, embedded tables, result export."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from dqrrr.core import (
    ProcessSpec,
    Provenance,
    ScheduleTrace,
    TimeSlice,
    Workload,
    WorkloadError,
    build_workload,
)
from dqrrr.metrics import MetricsReport, format_avg

HEADER = "pid,arrival,burst"
RNG_ALGORITHM = "python-random-mt19937"
ORDERS = ("increasing", "decreasing", "random")

# (arrival, burst) per process, P1..P5
PAPER_TABLES: dict[str, list[tuple[int, int]]] = {
    "t4.1": [(0, 30), (0, 42), (0, 50), (0, 85), (0, 97)],
    "t4.3": [(0, 105), (0, 90), (0, 60), (0, 45), (0, 35)],
    "t4.5": [(0, 92), (0, 70), (0, 35), (0, 40), (0, 80)],
    "t4.7": [(0, 28), (2, 35), (6, 50), (6, 82), (8, 110)],
    "t4.9": [(0, 80), (2, 72), (3, 65), (4, 50), (5, 43)],
    "t4.11": [(0, 26), (1, 82), (2, 70), (5, 31), (7, 40)],
    # worked example: four processes at time 0
    "illustration": [(0, 21), (0, 105), (0, 12), (0, 55)],
}


def paper_workload(table_id: str) -> Workload:
    key = table_id if table_id in PAPER_TABLES else f"t{table_id}"
    if key not in PAPER_TABLES:
        raise KeyError(f"unknown embedded workload {table_id!r}; known: {', '.join(PAPER_TABLES)}")
    rows = PAPER_TABLES[key]
    return build_workload(
        [ProcessSpec(i, a, b) for i, (a, b) in enumerate(rows, start=1)],
        Provenance("table", key),
    )


def parse_workload(text: str, source: str = "<string>") -> Workload:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip().lstrip("﻿") != HEADER:
        raise WorkloadError(f"expected header {HEADER!r}", line=1)
    specs: list[ProcessSpec] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        fields = raw.strip().split(",")
        if len(fields) != 3:
            raise WorkloadError(f"expected 3 comma-separated fields, got {raw!r}", line=lineno)
        try:
            pid, arrival, burst = (int(f, 10) for f in fields)
        except ValueError:
            raise WorkloadError(f"non-integer field in {raw!r}", line=lineno) from None
        if pid in seen:
            raise WorkloadError(f"duplicate pid P{pid}", pid=pid, line=lineno)
        if burst < 1:
            raise WorkloadError(f"burst must be >= 1, got {burst}", pid=pid, line=lineno)
        if arrival < 0:
            raise WorkloadError(f"arrival must be >= 0, got {arrival}", pid=pid, line=lineno)
        try:
            specs.append(ProcessSpec(pid, arrival, burst))
        except WorkloadError as exc:
            raise WorkloadError(str(exc), pid=pid, line=lineno) from None
        seen.add(pid)
    if not specs:
        raise WorkloadError("workload has no processes", line=2)
    return build_workload(specs, Provenance("file", source))


def serialize_workload(workload: Workload) -> str:
    rows = [HEADER] + [f"{p.pid},{p.arrival},{p.burst}" for p in workload]
    return "\n".join(rows) + "\n"


def load_workload(ref: str) -> Workload:
    """Resolve an embedded table id (``t4.1``) or read a CSV file."""
    if ref in PAPER_TABLES:
        return paper_workload(ref)
    path = Path(ref)
    return parse_workload(path.read_text(encoding="utf-8"), source=str(path))


@dataclass(frozen=True)
class GeneratorParams:
    order: str
    count: int
    burst_range: tuple[int, int]
    seed: int
    # None means every arrival is 0; otherwise the max gap between consecutive arrivals
    max_gap: int | None = None

    def __post_init__(self) -> None:
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {', '.join(ORDERS)}, got {self.order!r}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        lo, hi = self.burst_range
        if lo < 1 or hi < lo:
            raise ValueError(f"burst range must satisfy 1 <= lo <= hi, got {lo}:{hi}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_gap is not None and self.max_gap < 1:
            raise ValueError(f"max gap must be >= 1, got {self.max_gap}")

    @property
    def arrival_mode(self) -> str:
        return "all_zero" if self.max_gap is None else f"staggered:{self.max_gap}"


def generate_workload(params: GeneratorParams) -> Workload:
    """Draw bursts uniformly from the range, then order them; arrivals per mode."""
    rng = random.Random(params.seed)
    lo, hi = params.burst_range
    bursts = [rng.randint(lo, hi) for _ in range(params.count)]
    if params.order == "increasing":
        bursts.sort()
    elif params.order == "decreasing":
        bursts.sort(reverse=True)
    arrivals = [0] * params.count
    if params.max_gap is not None:
        for i in range(1, params.count):
            arrivals[i] = arrivals[i - 1] + rng.randint(0, params.max_gap)
    provenance = Provenance(
        "generator",
        RNG_ALGORITHM,
        (
            ("order", params.order),
            ("count", str(params.count)),
            ("burst_range", f"{lo}:{hi}"),
            ("arrivals", params.arrival_mode),
            ("distribution", "uniform"),
            ("seed", str(params.seed)),
        ),
    )
    return build_workload(
        [ProcessSpec(i, a, b) for i, (a, b) in enumerate(zip(arrivals, bursts), start=1)],
        provenance,
    )


def results_document(trace: ScheduleTrace, report: MetricsReport) -> dict:
    return {
        "workload": {
            "provenance": trace.workload.provenance.as_dict(),
            "processes": [{"pid": p.pid, "arrival": p.arrival, "burst": p.burst} for p in trace.workload],
        },
        "policy": trace.policy_label,
        "convention": report.convention,
        "quantum_sequence": list(trace.quantum_sequence),
        "slices": [{"pid": s.pid, "start": s.start, "end": s.end} for s in trace.slices],
        "per_process": [
            {
                "pid": p.pid,
                "waiting": report.waiting[p.pid],
                "turnaround": report.turnaround[p.pid],
                "completion": trace.completion[p.pid],
            }
            for p in trace.workload
        ],
        "avg_waiting": format_avg(report.avg_waiting),
        "avg_turnaround": format_avg(report.avg_turnaround),
        # the one-decimal strings above can round; these keep the exact rationals
        "avg_waiting_exact": str(report.avg_waiting),
        "avg_turnaround_exact": str(report.avg_turnaround),
        "context_switches": report.context_switches,
    }


def export_results(trace: ScheduleTrace, report: MetricsReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(results_document(trace, report), indent=2) + "\n"
    if format == "csv":
        return _export_csv(trace, report)
    raise ValueError(f"unknown export format {format!r}")


def _export_csv(trace: ScheduleTrace, report: MetricsReport) -> str:
    buf = io.StringIO()
    prov = trace.workload.provenance
    buf.write(f"# policy={trace.policy_label}\n")
    buf.write(f"# convention={report.convention}\n")
    buf.write(f"# provenance={prov.kind}:{prov.source}\n")
    buf.write(f"# quantum_sequence={' '.join(map(str, trace.quantum_sequence))}\n")
    buf.write(f"# context_switches={report.context_switches}\n")
    buf.write(f"# avg_waiting={format_avg(report.avg_waiting)}\n")
    buf.write(f"# avg_turnaround={format_avg(report.avg_turnaround)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["record", "pid", "start", "end", "completion", "waiting", "turnaround"])
    for s in trace.slices:
        w.writerow(["slice", s.pid, s.start, s.end, "", "", ""])
    for p in trace.workload:
        w.writerow(["process", p.pid, "", "", trace.completion[p.pid],
                    report.waiting[p.pid], report.turnaround[p.pid]])
    return buf.getvalue()


def load_results(text: str) -> tuple[ScheduleTrace, MetricsReport]:
    """Inverse of ``export_results(..., "json")``."""
    doc = json.loads(text)
    wl = doc["workload"]
    workload = build_workload(
        [ProcessSpec(p["pid"], p["arrival"], p["burst"]) for p in wl["processes"]],
        Provenance.from_dict(wl["provenance"]),
    )
    completion = {row["pid"]: row["completion"] for row in doc["per_process"]}
    trace = ScheduleTrace(
        slices=tuple(TimeSlice(s["pid"], s["start"], s["end"]) for s in doc["slices"]),
        quantum_sequence=tuple(doc["quantum_sequence"]),
        completion=dict(sorted(completion.items())),
        workload=workload,
        policy_label=doc["policy"],
    )
    report = MetricsReport(
        policy_label=doc["policy"],
        context_switches=doc["context_switches"],
        waiting={row["pid"]: row["waiting"] for row in doc["per_process"]},
        turnaround={row["pid"]: row["turnaround"] for row in doc["per_process"]},
        avg_waiting=Fraction(doc["avg_waiting_exact"]),
        avg_turnaround=Fraction(doc["avg_turnaround_exact"]),
        convention=doc["convention"],
        quantum_sequence=tuple(doc["quantum_sequence"]),
    )
    return trace, report
