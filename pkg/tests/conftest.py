import time

import pytest

# criterion number -> (title, passed, detail)
ACCEPTANCE: dict = {}


class Criterion:
    def __init__(self, number, title, limit):
        self.number = number
        self.title = title
        self.limit = limit
        self.start = time.perf_counter()

    def finish(self, ok, detail=""):
        elapsed = time.perf_counter() - self.start
        passed = bool(ok) and elapsed < self.limit
        detail = f"{detail}; {elapsed:.1f}s of {self.limit}s".lstrip("; ")
        ACCEPTANCE[self.number] = (self.title, passed, detail)
        return passed


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {number}. {title} ({detail})")
