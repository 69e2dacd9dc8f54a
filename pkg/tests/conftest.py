import numpy as np
import pytest
from hypothesis import settings

from hockeypythag import ingest, published

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20131016)


@pytest.fixture(scope="session")
def fixture_log():
    return str(published.fixture_log_path())


@pytest.fixture(scope="session")
def fixture_seasons(fixture_log):
    with open(fixture_log, newline="") as f:
        return ingest.aggregate_seasons(ingest.parse_game_log(f))


def pytest_terminal_summary(terminalreporter):
    from tests_acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(LINES, key=lambda k: int(k[1:])):
            terminalreporter.write_line(LINES[key])
