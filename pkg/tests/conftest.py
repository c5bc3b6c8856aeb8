import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


class _Recorder:
    """Runs one acceptance criterion under a runtime bound and logs the outcome."""

    def __call__(self, number, title, bound, check):
        import time

        start = time.perf_counter()
        error = None
        try:
            ok = bool(check())
        except AssertionError as exc:
            ok, error = False, exc
        elapsed = time.perf_counter() - start
        in_time = elapsed < bound
        status = "PASS" if ok and in_time else "FAIL"
        note = "" if in_time else " runtime bound exceeded"
        line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s, bound {bound}s){note}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if error is not None:
            raise error
        assert ok, title
        assert in_time, f"criterion {number} took {elapsed:.2f}s, bound {bound}s"


@pytest.fixture
def criterion():
    return _Recorder()
