import pytest

import bcl

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])


@pytest.fixture(scope="session")
def octahedron():
    return bcl.cross_polytope_boundary(3)


@pytest.fixture(scope="session")
def bm3():
    return bcl.bm(3)


@pytest.fixture(scope="session")
def bm4():
    return bcl.bm(4)


@pytest.fixture(scope="session")
def bm5():
    return bcl.bm(5)


@pytest.fixture(scope="session")
def st12_3():
    return bcl.stacked_cross_polytopal_sphere(12, 3)
