import pytest

from kbranching import Digraph


@pytest.fixture(scope="session")
def report(pytestconfig):
    """Write a line straight to the terminal, bypassing output capture."""
    tr = pytestconfig.pluginmanager.getplugin("terminalreporter")

    def write(line):
        if tr is not None:
            tr.ensure_newline()
            tr.write_line(line)
        else:
            print(line)

    return write


# small fixtures shared across modules
@pytest.fixture
def P1():
    return Digraph(2, [(1, 2, 3)])


@pytest.fixture
def P2():
    return Digraph(2, [(1, 2, 3), (2, 1, 5)])


@pytest.fixture
def D2():
    return Digraph(2, [(1, 2, 1), (1, 2, 2), (2, 1, 4)])


@pytest.fixture
def C3():
    return Digraph(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1), (1, 3, 3)])
