import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from dqrrr.core import ProcessSpec, build_workload  # noqa: E402


@st.composite
def workloads(draw, max_n=8, max_arrival=60, max_burst=60, zero_arrivals=False):
    n = draw(st.integers(1, max_n))
    bursts = draw(st.lists(st.integers(1, max_burst), min_size=n, max_size=n))
    if zero_arrivals:
        arrivals = [0] * n
    else:
        arrivals = draw(st.lists(st.integers(0, max_arrival), min_size=n, max_size=n))
    pids = draw(st.permutations(range(1, n + 1)))
    return build_workload(ProcessSpec(pid, a, b) for pid, a, b in zip(pids, arrivals, bursts))


_verdicts: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _verdicts.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _verdicts:
        terminalreporter.write_line(f"{verdict}  {name}")
