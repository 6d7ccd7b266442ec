from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, bool, str]] = {}


class AcceptanceLog:
    def record(self, number: int, title: str, passed: bool, detail: str = "") -> None:
        _RESULTS[number] = (title, passed, detail)


@pytest.fixture
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, passed, detail = _RESULTS[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number}: {title} -- {detail}")
