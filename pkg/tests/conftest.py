import re

_TITLES = {
    1: "uniqueness at degrees 0 and 1",
    2: "one 2-opetope per source count up to 4",
    3: "degree-3 counts 3 and 9",
    4: "axiom suite and mutations",
    5: "normalization against closure classes",
    6: "round trips",
    7: "calculus laws",
    8: "cardinality laws",
    9: "diamond family totality",
    10: "rigidity and shape naturality",
}

_results: dict[int, tuple[str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the ten acceptance criteria")


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[n] = ("PASS" if report.outcome == "passed" else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        status, secs = _results[n]
        terminalreporter.write_line(f"criterion {n:>2} {status}  {secs:6.2f}s  {_TITLES[n]}")
