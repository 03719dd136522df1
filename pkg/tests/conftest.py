import pytest

from swemesh.state import PhysicsParams
from swemesh.grid import ComputationalGrid
from swemesh.metrics import SchemeOrder

from .meshes import wavy


@pytest.fixture
def params():
    return PhysicsParams(g=1.0, gamma=1.0)


@pytest.fixture
def order():
    return SchemeOrder(3)


@pytest.fixture
def periodic_grid_1d():
    return ComputationalGrid((16,), (0.0,), (2.0,), ('periodic',))


@pytest.fixture
def outflow_grid_1d():
    return ComputationalGrid((21,), (0.0,), (10.0,), ('outflow',))


@pytest.fixture
def periodic_grid_2d():
    return ComputationalGrid((14, 12), (0.0, 0.0), (2.0, 2.0),
                             ('periodic', 'periodic'))


@pytest.fixture
def outflow_grid_2d():
    return ComputationalGrid((13, 14), (0.0, 0.0), (1.0, 1.0),
                             ('outflow', 'outflow'))


@pytest.fixture
def wavy_mesh_2d(periodic_grid_2d):
    return wavy(periodic_grid_2d)


@pytest.fixture
def wavy_outflow_mesh_2d(outflow_grid_2d):
    return wavy(outflow_grid_2d)
