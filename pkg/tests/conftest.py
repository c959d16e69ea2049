import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stochparity import GenSpec, random_game  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

_criteria: list[str] = []


def small_games(count: int, first_seed: int = 0, max_n: int = 7, **kw):
    """Deterministic corpus of random parity games with 1..max_n vertices."""
    return [random_game(GenSpec(seed, 1 + seed % max_n, **kw)) for seed in range(first_seed, first_seed + count)]


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def criterion_log():
    return _criteria


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
