import pytest
from numpy import allclose, arange, zeros

from swemesh.grid import ComputationalGrid, MeshCoordinates


def test_periodic_spacing_omits_last_node():
    grid = ComputationalGrid((10,), (0.0,), (2.0,), ('periodic',))
    assert grid.spacing[0] == pytest.approx(0.2)
    assert grid.nodes()[0, -1, 0] == pytest.approx(1.8)


def test_outflow_spacing_includes_both_ends():
    grid = ComputationalGrid((11,), (0.0,), (2.0,), ('outflow',))
    assert grid.spacing[0] == pytest.approx(0.2)
    assert grid.nodes()[0, -1, 0] == pytest.approx(2.0)


def test_one_dimensional_grid_has_inactive_axis():
    grid = ComputationalGrid((8,), (0.0,), (1.0,), ('outflow',))
    assert grid.shape == (8, 1)
    assert grid.dimension == 1
    assert grid.axes == (0,)
    assert grid.cell_volume == pytest.approx(grid.spacing[0])


def test_two_dimensional_grid(outflow_grid_2d):
    assert outflow_grid_2d.axes == (0, 1)
    assert outflow_grid_2d.nodes().shape == (2, 13, 14)
    assert outflow_grid_2d.cell_volume == pytest.approx(1.0 / 12 / 13)


@pytest.mark.parametrize('args', [
    ((8, 8, 8), (0, 0, 0), (1, 1, 1), ('outflow',) * 3),
    ((8,), (0.0,), (1.0,), ('reflective',)),
    ((8,), (1.0,), (1.0,), ('outflow',)),
    ((1,), (0.0,), (1.0,), ('outflow',)),
    ((8, 8), (0.0,), (1.0,), ('outflow',)),
])
def test_invalid_grids(args):
    with pytest.raises(ValueError):
        ComputationalGrid(*args)


def test_refined_keeps_domain():
    periodic = ComputationalGrid((10,), (0.0,), (2.0,), ('periodic',))
    outflow = ComputationalGrid((11,), (0.0,), (2.0,), ('outflow',))
    assert periodic.refined(2).shape == (20, 1)
    assert outflow.refined(2).shape == (21, 1)
    assert outflow.refined(2).spacing[0] == pytest.approx(0.1)
    assert periodic.refined(4) == ComputationalGrid((40,), (0.0,), (2.0,),
                                                   ('periodic',))
    mixed = ComputationalGrid((8, 5), (0.0, -1.0), (1.0, 1.0),
                              ('periodic', 'outflow'))
    assert mixed.refined(2).shape == (16, 9)
    assert mixed.refined(2).lower == (0.0, -1.0)


def test_grids_compare_by_value():
    first = ComputationalGrid((10,), (0.0,), (2.0,), ('periodic',))
    second = ComputationalGrid([10], [0], [2], ['PERIODIC'])
    assert first == second
    assert hash(first) == hash(second)


def test_uniform_coordinates_match_nodes(outflow_grid_2d):
    coords = MeshCoordinates.uniform(outflow_grid_2d)
    assert allclose(coords.x, outflow_grid_2d.nodes())


def test_moved_coordinates(outflow_grid_2d):
    coords = MeshCoordinates.uniform(outflow_grid_2d)
    moved = coords.moved(0.01 * (1.0 + zeros(coords.x.shape)))
    assert allclose(moved.x1 - coords.x1, 0.01)
    assert allclose(coords.x, outflow_grid_2d.nodes())


def test_coordinates_need_matching_shape(outflow_grid_2d):
    with pytest.raises(ValueError):
        MeshCoordinates(outflow_grid_2d, arange(10.0))
