from pathlib import Path

import pytest

from tugame import Game, load_game

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def table1():
    return load_game(FIXTURES / "table1.tug")


@pytest.fixture
def sub123(table1):
    from tugame import coalition, subgame

    return subgame(table1, coalition(1, 2, 3))


@pytest.fixture
def sub12(table1):
    from tugame import coalition, subgame

    return subgame(table1, coalition(1, 2))


@pytest.fixture
def half_core_game():
    """v_i = 0, v_ij = 1, v_N = 3/2: super-additive, not convex, core nonempty."""
    return load_game(FIXTURES / "superadditive_nonconvex.tug")


@pytest.fixture
def empty_core_game():
    return Game.from_table(3, {(1,): 0, (2,): 0, (3,): 0, (1, 2): 1, (1, 3): 1, (2, 3): 1, (1, 2, 3): 1})


@pytest.fixture
def additive4():
    return Game.additive([2, -1, "1/2", 3])


# (criterion, passed, note) recorded by tests/test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, note in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {note}")
