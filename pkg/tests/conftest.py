import time

import pytest

_LINES: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_passed = rep.passed


@pytest.fixture
def criterion(request):
    """Times one acceptance criterion and records a pass/fail line for the summary.

    The test stores a short result string in ``criterion.detail`` and checks
    ``criterion.elapsed()`` against its own budget.
    """
    marker = request.node.get_closest_marker("acceptance")
    number, title, budget = marker.args

    class Record:
        detail = ""
        start = time.perf_counter()

        def elapsed(self):
            return time.perf_counter() - self.start

    rec = Record()
    yield rec
    ok = getattr(request.node, "call_passed", False)
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {rec.detail} ({rec.elapsed():.1f}s of {budget}s)"
    _LINES.append(line)
    print("\n" + line)


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
