import pytest

from planar4c.instances import complete4, icosahedron, octahedron, triangulation_corpus

# filled in by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def k4():
    return complete4()


@pytest.fixture
def octa():
    return octahedron()


@pytest.fixture(scope="session")
def ico():
    return icosahedron()


@pytest.fixture(scope="session")
def corpus8():
    """Polygon-pair triangulations with v <= 8, deduplicated."""
    return list(triangulation_corpus(8))
