import pytest

from dyngal.catalog import load_bundled

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalogs():
    return {n: load_bundled(n) for n in (5, 6)}


@pytest.fixture(scope="session")
def catalog7():
    return load_bundled(7)


@pytest.fixture(scope="session")
def pattern_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("patterns")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
