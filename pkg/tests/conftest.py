"""Shared test fixtures: heavy artifacts are built once per session."""

from __future__ import annotations

import pytest

from siflab import BitUniverse
from siflab.corpus import strategy_corpus, zigzag_corpus


@pytest.fixture(scope="session")
def bit_universe() -> BitUniverse:
    """The 16-trace period-1 binary universe with cached sweep tables."""
    return BitUniverse.standard()


@pytest.fixture(scope="session")
def corpus120():
    return strategy_corpus(120)


@pytest.fixture(scope="session")
def zigzag24():
    return zigzag_corpus(24)


# One line per acceptance criterion, echoed after the run so the
# verdicts stay visible even when pytest captures stdout.
_criterion_lines: list[str] = []


def record_criterion(line: str) -> None:
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
