import pytest

from lipframe import SolverCfg, disc_frame, linear_frame, log_frame, orthogonal_pair


@pytest.fixture(scope="session")
def disc30():
    return disc_frame(30)


@pytest.fixture(scope="session")
def log40():
    return log_frame(40)


@pytest.fixture(scope="session")
def lin_double():
    # dim 1, N = 1: f(x) = 2x, tau = 1, frame map S = 2I
    return linear_frame([[2.0]], [[1.0]])


@pytest.fixture(scope="session")
def lin_double_n2():
    # dim 1, N = 2: f1(x) = 2x, f2 = 0, tau = (1, 0); S = 2I with a slack index
    return linear_frame([[2.0], [0.0]], [[1.0, 0.0]])


@pytest.fixture(scope="session")
def ortho_pair():
    return orthogonal_pair()


@pytest.fixture(scope="session")
def tight_solver():
    # damping 0.5 keeps |1 - damping * 2| < 1 for the S = 2I fixtures
    return SolverCfg(damping=0.5, max_iter=500, residual_tol=1e-12)
