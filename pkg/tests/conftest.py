import numpy as np
import pytest

from fucik import get_fixture


@pytest.fixture(scope="session")
def A1():
    return get_fixture("A1").matrix


@pytest.fixture(scope="session")
def A2():
    return get_fixture("A2").matrix


@pytest.fixture(scope="session")
def A3():
    return get_fixture("A3").matrix


@pytest.fixture(scope="session")
def A4():
    return get_fixture("A4").matrix


@pytest.fixture(scope="session")
def A5():
    return get_fixture("A5").matrix


@pytest.fixture(scope="session")
def A6():
    return get_fixture("A6").matrix


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def B_defective_p2():
    """Integer matrix similar to a pair of 2x2 nilpotent Jordan blocks.

    Eigenvalue 0 with geometric multiplicity 2 and algebraic 4; the kernel
    intersects the range in a direction with all components nonzero.
    """
    return np.array(
        [
            [1.0, 3.0, -1.0, -1.0],
            [-1.0, -2.0, 0.0, 1.0],
            [-1.0, -2.0, 0.0, 1.0],
            [-1.0, -1.0, -1.0, 1.0],
        ]
    )
