import pytest

from gaplab.conf import conf
from gaplab.kernels import ModelParams
from gaplab.solver import solve_model

# load builtins once and for all
from gaplab.checks import load_builtins
load_builtins()


@pytest.fixture(autouse=True)
def fresh_conf():
    """Every test starts from the packaged configuration."""
    conf.reset()
    yield
    conf.reset()


@pytest.fixture
def small_grid():
    """Coarser grid for tests that solve many parameter sets."""
    conf.merge({'solver': {'grid-m': 400}})
    return 400


@pytest.fixture(scope='session')
def flat_report():
    return solve_model(ModelParams(1, 0.0, 2.0))


@pytest.fixture(scope='session')
def curved_report():
    return solve_model(ModelParams(4, 1.0, 1.2))
