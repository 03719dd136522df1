import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy import (allclose, diff, exp, float64, full, ones, stack, sin, pi,
                   roll, abs as abs_, all as all_)

from swemesh.exceptions import MeshTanglingError
from swemesh.grid import ComputationalGrid, MeshCoordinates
from swemesh.mesh import (MonitorParams, MeshAdaptor, monitor, select,
                          smooth_monitor, jacobi_sweep, limit_and_move,
                          mesh_velocity)
from swemesh.metrics import SchemeOrder, spatial_metrics

from .meshes import lake_states, smooth_states

monitors = arrays(float64, (5, 6), elements=st.floats(0.5, 10.0))


def test_monitor_of_constant_solution_is_one(outflow_grid_2d):
    states = lake_states(MeshCoordinates.uniform(outflow_grid_2d))
    omega = monitor(states, outflow_grid_2d, MonitorParams())
    assert allclose(omega, 1.0)


def test_monitor_resolves_topography(outflow_grid_2d):
    states = lake_states(MeshCoordinates.uniform(outflow_grid_2d))
    params = MonitorParams(sigmas=('b',), thetas=(50.0,))
    omega = monitor(states, outflow_grid_2d, params)
    assert omega.min() >= 1.0
    assert omega.max() == pytest.approx(51.0 ** 0.5)


def test_laplacian_weight_raises_monitor(periodic_grid_2d):
    states = smooth_states(MeshCoordinates.uniform(periodic_grid_2d))
    plain = MonitorParams(sigmas=('h',), thetas=(10.0,))
    curved = MonitorParams(sigmas=('h',), thetas=(10.0,), laplacians=(5.0,))
    omega = monitor(states, periodic_grid_2d, plain)
    assert all_(monitor(states, periodic_grid_2d, curved) >= omega)


def _second_difference(power, n):
    grid = ComputationalGrid((n,), (0.0,), (2.0,), ('periodic',))
    x = MeshCoordinates.uniform(grid).x1
    states = stack([full(x.shape, 2.0), 0.0 * x, 0.0 * x, sin(pi * x)])
    params = MonitorParams(('h+b',), (10.0,), power=power)
    omega = monitor(states, grid, params)[:, 0]
    return abs_(roll(omega, 1) - 2.0 * omega + roll(omega, -1)).max()


def test_squared_monitor_is_smooth():
    smooth = _second_difference(2.0, 100) / _second_difference(2.0, 200)
    kinked = _second_difference(1.0, 100) / _second_difference(1.0, 200)
    assert smooth == pytest.approx(4.0, rel=0.05)
    assert kinked < 3.0


def test_select_speed():
    states = ones((4, 2, 2))
    states[1] = 3.0
    states[2] = 4.0
    states[0] = 2.0
    assert allclose(select(states, 'speed'), 2.5)
    assert allclose(select(states, 'h+b'), 3.0)
    with pytest.raises(ValueError):
        select(states, 'vorticity')


@given(st.floats(0.5, 10.0), st.integers(0, 4))
def test_smoothing_keeps_constants(value, passes):
    assert allclose(smooth_monitor(full((5, 6), value), passes), value)


@given(monitors)
def test_smoothing_stays_within_bounds(omega):
    smoothed = smooth_monitor(omega, 3)
    assert smoothed.shape == omega.shape
    assert smoothed.min() >= omega.min() - 1e-12
    assert smoothed.max() <= omega.max() + 1e-12


def test_smoothing_needs_non_negative_passes():
    with pytest.raises(ValueError):
        smooth_monitor(ones((3, 3)), -1)


@pytest.mark.parametrize('fixture', ['periodic_grid_2d', 'outflow_grid_2d',
                                     'outflow_grid_1d'])
def test_uniform_mesh_is_a_fixed_point(fixture, request):
    grid = request.getfixturevalue(fixture)
    coords = MeshCoordinates.uniform(grid)
    swept = jacobi_sweep(coords, full(grid.shape, 3.0))
    assert allclose(swept.x, coords.x, rtol=0.0, atol=1e-12)


def test_nodes_cluster_where_monitor_is_large(outflow_grid_1d):
    coords = MeshCoordinates.uniform(outflow_grid_1d)
    omega = 1.0 + 5.0 * exp(-(coords.x1 - 5.0) ** 2)
    for _ in range(500):
        coords = jacobi_sweep(coords, omega)
    gaps = diff(coords.x1[:, 0])
    assert all_(gaps > 0.0)
    assert coords.x1[0, 0] == 0.0
    assert coords.x1[-1, 0] == pytest.approx(10.0)
    assert gaps[9] < 0.5 * gaps[0]


def test_jacobi_sweep_checks_monitor_shape(outflow_grid_1d):
    with pytest.raises(ValueError):
        jacobi_sweep(MeshCoordinates.uniform(outflow_grid_1d), ones((3, 1)))


def test_identical_candidate_is_not_limited(wavy_mesh_2d):
    move = limit_and_move(wavy_mesh_2d, wavy_mesh_2d)
    assert move.dtau == 1.0
    assert allclose(move.new.x, wavy_mesh_2d.x)


def test_large_move_is_limited(outflow_grid_1d):
    coords = MeshCoordinates.uniform(outflow_grid_1d)
    x = coords.x.copy()
    x[0, 10, 0] += 0.75
    move = limit_and_move(coords, MeshCoordinates(outflow_grid_1d, x))
    assert move.dtau == pytest.approx(1.0 / 3.0)
    assert move.new.x1[10, 0] == pytest.approx(5.25)


def test_folded_mesh_is_rejected(outflow_grid_1d):
    x = MeshCoordinates.uniform(outflow_grid_1d).x.copy()
    x[0, 5, 0] = 4.0
    folded = MeshCoordinates(outflow_grid_1d, x)
    with pytest.raises(MeshTanglingError) as error:
        limit_and_move(folded, folded)
    assert error.value.node[0] in (4, 5, 6)
    assert error.value.value <= 0.0


def test_meshes_must_share_grid(outflow_grid_1d, periodic_grid_1d):
    with pytest.raises(ValueError):
        limit_and_move(MeshCoordinates.uniform(outflow_grid_1d),
                       MeshCoordinates.uniform(periodic_grid_1d))


def test_mesh_velocity(outflow_grid_1d):
    coords = MeshCoordinates.uniform(outflow_grid_1d)
    x = coords.x.copy()
    x[0, 10, 0] += 0.1
    move = limit_and_move(coords, MeshCoordinates(outflow_grid_1d, x))
    assert allclose(mesh_velocity(move, 0.5), move.displacement / 0.5)
    assert allclose(move.timed(0.5).xdot[0, 10, 0], 0.2)
    for dt in (0.0, -1.0):
        with pytest.raises(ValueError):
            mesh_velocity(move, dt)


def test_adaptor_keeps_mesh_valid(outflow_grid_2d):
    coords = MeshCoordinates.uniform(outflow_grid_2d)
    states = lake_states(coords)
    adaptor = MeshAdaptor(MonitorParams(sigmas=('b',), thetas=(20.0,)),
                          SchemeOrder(3))
    for _ in range(5):
        move = adaptor.adapt(states, coords)
        assert 0.0 < move.dtau <= 1.0
        coords = move.new
    assert all_(diff(coords.x1, axis=0) > 0.0)
    assert all_(diff(coords.x2, axis=1) > 0.0)
    assert spatial_metrics(coords, SchemeOrder(3)).jacobian.min() > 0.0
    assert not allclose(coords.x, MeshCoordinates.uniform(outflow_grid_2d).x)


def test_adaptor_leaves_uniform_mesh_for_flat_solution(outflow_grid_2d):
    coords = MeshCoordinates.uniform(outflow_grid_2d)
    move = MeshAdaptor().adapt(lake_states(coords), coords)
    assert allclose(move.new.x, coords.x, rtol=0.0, atol=1e-12)


@pytest.mark.parametrize('kwargs', [{'sigmas': ('q',)},
                                    {'sigmas': ()},
                                    {'thetas': (1.0, 2.0)},
                                    {'thetas': (0.0,)},
                                    {'laplacians': (-1.0,)},
                                    {'power': 0.0},
                                    {'smoothing_passes': -1},
                                    {'jacobi_iterations': 0}])
def test_invalid_monitor_params(kwargs):
    with pytest.raises(ValueError):
        MonitorParams(**kwargs)


def test_monitor_params_round_trip():
    params = MonitorParams(sigmas=('h', 'v1'), thetas=(10.0, 5.0),
                           laplacians=(0.0, 1.0), power=1.0)
    assert MonitorParams(**params.as_dict()) == params
    assert params != MonitorParams()
