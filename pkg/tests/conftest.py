import pytest

from multiwebs.generators import suite


@pytest.fixture(scope="session")
def graphs():
    return suite()


@pytest.fixture
def report(capsys):
    """Print one line straight to the terminal, bypassing capture."""
    def emit(line):
        with capsys.disabled():
            print("\n" + line)
    return emit
