import functools

import pytest

from thickcentre.fixtures import setting


@functools.lru_cache(maxsize=None)
def cached_setting(name: str, p: int = 101):
    """Shared across test modules; enumeration and Bousfield caches are expensive."""
    return setting(name, p)


@pytest.fixture(scope="session")
def get_setting():
    return cached_setting


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
