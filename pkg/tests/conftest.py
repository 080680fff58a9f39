import pathlib

import pytest

from costly_games import RandomGameSpec, example_game, generate_random_game

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

_criteria = {}


def record_criterion(number, title, passed, detail=""):
    _criteria[number] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, passed, detail = _criteria[n]
        tail = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if passed else 'FAIL'} {title}{tail}")


@pytest.fixture
def sample():
    """The seven-vertex game used throughout, as a cost-parity game."""
    return example_game("cost")


@pytest.fixture
def sample_path():
    return FIXTURES / "example.game"


def random_parity(seed, n=5, colors=4, inc=0.3, max_out=None, variant="classical"):
    return generate_random_game(RandomGameSpec(n=n, colors=colors, seed=seed,
                                               increment_prob=inc, max_out=max_out,
                                               variant=variant))


def random_streett(seed, n=5, pairs=2, inc=0.3, max_out=None, variant="classical"):
    return generate_random_game(RandomGameSpec(n=n, pairs=pairs, seed=seed, kind="streett",
                                               increment_prob=inc, max_out=max_out,
                                               variant=variant))
