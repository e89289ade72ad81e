from __future__ import annotations

import time

import pytest

_RESULTS: dict[int, tuple[str, bool, float, float, str]] = {}


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
        _RESULTS[self.number] = (self.title, ok, elapsed, self.limit, detail)
        line = _format(self.number, _RESULTS[self.number])
        print(line)
        if exc_type is None and elapsed >= self.limit:
            raise AssertionError(f"criterion {self.number} took {elapsed:.1f}s, limit {self.limit:.0f}s")
        return False


def _format(number, result) -> str:
    title, ok, elapsed, limit, detail = result
    status = "PASS" if ok else "FAIL"
    text = f"criterion {number:2d} {status}  {elapsed:7.2f}s / {limit:.0f}s  {title}"
    return text + (f"  [{detail}]" if detail else "")


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        terminalreporter.write_line(_format(number, _RESULTS[number]))
