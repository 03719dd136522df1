import pytest
from numpy import allclose, abs as abs_, arange, zeros, ones, sin, pi

from swemesh.boundary import HALO
from swemesh.grid import ComputationalGrid, MeshCoordinates
from swemesh.metrics import (SchemeOrder, alpha_coefficients, spatial_metrics,
                             temporal_metrics, scl_residual, vcl_rate,
                             jacobian, central_difference)


@pytest.mark.parametrize('p', [1, 2, 3])
def test_alpha_coefficients_are_consistent(p):
    alpha = alpha_coefficients(p)
    assert len(alpha) == p
    assert sum(m * a for m, a in enumerate(alpha, start=1)) == pytest.approx(1)


@pytest.mark.parametrize('p', [2, 3])
def test_alpha_coefficients_cancel_higher_moments(p):
    alpha = alpha_coefficients(p)
    for k in range(1, p):
        moment = sum(a * m ** (2 * k + 1)
                     for m, a in enumerate(alpha, start=1))
        assert moment == pytest.approx(0.0, abs=1e-13)


def test_unsupported_order():
    with pytest.raises(ValueError):
        SchemeOrder(4)


def test_order_properties():
    order = SchemeOrder(2)
    assert order.accuracy == 4
    assert order == SchemeOrder(2)
    assert order != SchemeOrder(3)


def test_uniform_mesh_has_unit_jacobian(outflow_grid_1d, order):
    coords = MeshCoordinates.uniform(outflow_grid_1d)
    metrics = spatial_metrics(coords, order)
    assert allclose(metrics.jacobian, 1.0)
    assert metrics.spatial.shape == (2, 2, 21 + 2 * HALO, 1 + 2 * HALO)
    assert metrics.first_non_positive() is None


def test_stretched_mesh_jacobian():
    grid = ComputationalGrid((12, 10), (0, 0), (1, 1), ('outflow', 'outflow'))
    xi = grid.nodes()
    coords = MeshCoordinates(grid, xi * [[[2.0]], [[0.5]]])
    assert allclose(jacobian(coords, SchemeOrder(3)), 1.0)
    stretched = MeshCoordinates(grid, xi * [[[3.0]], [[1.0]]])
    assert allclose(jacobian(stretched, SchemeOrder(1)), 3.0)


def test_too_few_nodes():
    grid = ComputationalGrid((6,), (0.0,), (1.0,), ('outflow',))
    with pytest.raises(ValueError):
        spatial_metrics(MeshCoordinates.uniform(grid), SchemeOrder(3))


@pytest.mark.parametrize('p', [1, 2, 3])
def test_surface_conservation_on_wavy_mesh(wavy_mesh_2d, p):
    metrics = spatial_metrics(wavy_mesh_2d, SchemeOrder(p))
    assert abs_(scl_residual(metrics)).max() < 1e-11


def test_surface_conservation_with_outflow(wavy_outflow_mesh_2d, order):
    metrics = spatial_metrics(wavy_outflow_mesh_2d, order)
    assert abs_(scl_residual(metrics)).max() < 1e-10


def test_folded_mesh_is_detected(outflow_grid_2d, order):
    xi = outflow_grid_2d.nodes()
    x = xi.copy()
    x[0] = xi[0] - 0.3 * sin(pi * xi[0]) * 4.0
    metrics = spatial_metrics(MeshCoordinates(outflow_grid_2d, x), order)
    node, value = metrics.first_non_positive()
    assert value <= 0.0
    assert len(node) == 2


def test_temporal_metrics_of_uniform_translation(wavy_mesh_2d, order):
    metrics = spatial_metrics(wavy_mesh_2d, order)
    xdot = ones((2,) + wavy_mesh_2d.grid.shape)
    moving = metrics.moving(xdot)
    expected = -(metrics.spatial[:, 0] + metrics.spatial[:, 1])
    assert allclose(moving.temporal, expected)
    # translation changes no volume
    assert abs_(vcl_rate(moving)).max() < 1e-11
    assert allclose(metrics.moving(None).temporal, 0.0)


def test_temporal_metrics_need_matching_shape(wavy_mesh_2d, order):
    metrics = spatial_metrics(wavy_mesh_2d, order)
    with pytest.raises(ValueError):
        temporal_metrics(metrics.spatial, zeros((2, 3, 3)))


def test_central_difference_is_exact_for_cubics():
    grid = ComputationalGrid((20,), (0.0,), (1.0,), ('outflow',))
    step = grid.spacing[0]
    padded = zeros((26, 7))
    xs = step * arange(-3.0, 23.0)
    padded[:] = (xs ** 3)[:, None]
    derivative = central_difference(padded, 0, alpha_coefficients(2), step)
    assert allclose(derivative[:, 0], 3.0 * xs[2:-2] ** 2)

