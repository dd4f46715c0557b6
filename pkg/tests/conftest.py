import pytest

from lieenv.env import EnvElement
from lieenv.gf import FieldSpec
from lieenv.reproduce import load_fixture


@pytest.fixture(scope="session")
def F3():
    return FieldSpec(3)


@pytest.fixture(scope="session")
def F9():
    return FieldSpec(3, 2, (1, 0, 1))


@pytest.fixture(scope="session")
def cyclic():
    """(file, L, H, generators) for the five-dimensional F_3 algebra."""
    af, L = load_fixture("cyclic_char3")
    gens = {nm: EnvElement.generator(L, nm) for nm in L.names}
    return af, L, af.subspace(L, "H"), gens


@pytest.fixture(scope="session")
def stable():
    af, L = load_fixture("stable_window")
    gens = {nm: EnvElement.generator(L, nm) for nm in L.names}
    return af, L, af.subspace(L, "H"), gens


@pytest.fixture(scope="session")
def power():
    af, L = load_fixture("power_product")
    gens = {nm: EnvElement.generator(L, nm) for nm in L.names}
    return af, L, af.subspace(L, "H"), gens


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n][1])
