import re

_TITLES = {
    1: "CF soundness: round trip and reduced <=> purely periodic",
    2: "convergent recurrence and approximation bound",
    3: "unit closed forms, periods <= 2",
    4: "period growth, tables equal the numeric oracle",
    5: "Pisot classification and Schur-Cohn counts",
    6: "decay rates of ||alpha^n||",
    7: "Mahler rational case, exact rows",
    8: "Main Theorem scan",
    9: "nested-interval construction and certificates",
    10: "determinism and serialization round trips",
}

_results: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one acceptance criterion per test")


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.failed:
        _results[n] = "FAIL"
    elif report.when == "call" and n not in _results:
        _results[n] = "SKIP" if report.skipped else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        terminalreporter.write_line(f"criterion {n:2d}: {_results[n]}  {_TITLES.get(n, '')}")
