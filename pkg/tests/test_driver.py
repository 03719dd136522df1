import logging
import pytest
from numpy import allclose, diff, median, zeros, abs as abs_

from swemesh import driver
from swemesh.config import ProblemConfig
from swemesh.driver import (build_problem, cut_line, reference_solution,
                            reference_errors, run, simulate,
                            convergence_study)
from swemesh.exceptions import ConfigError
from swemesh.grid import MeshCoordinates


@pytest.fixture
def plane(outflow_grid_2d):
    coords = MeshCoordinates.uniform(outflow_grid_2d)
    states = zeros((4,) + outflow_grid_2d.shape)
    states[3] = 0.5 * coords.x1
    states[0] = 1.0 + coords.x1 + coords.x2
    states[1] = 2.0 * states[0]
    return states, coords


@pytest.fixture
def perturbation():
    return ProblemConfig('perturbation_1d', resolution=20, mode='static',
                         reference_resolution=40, end=0.002, outputs=())


def test_cut_across_first_axis(plane):
    states, coords = plane
    samples = cut_line(states, coords, 1, 0.5)
    assert samples.shape == (13, 6)
    s = samples[:, 0]
    assert all(s[1:] > s[:-1])
    assert allclose(samples[:, 1], 1.5 + s)
    assert allclose(samples[:, 2], 2.0)
    assert allclose(samples[:, 4], 0.5 * s)
    assert allclose(samples[:, 5], 1.5 + 1.5 * s)


def test_cut_across_second_axis(plane):
    states, coords = plane
    samples = cut_line(states, coords, 0, 0.6)
    assert samples.shape == (14, 6)
    assert allclose(samples[:, 1], 1.6 + samples[:, 0])
    assert allclose(samples[:, 4], 0.3)


def test_cut_outside_domain(plane):
    states, coords = plane
    with pytest.raises(ValueError):
        cut_line(states, coords, 1, 2.0)
    with pytest.raises(ValueError):
        cut_line(states, coords, 2, 0.5)


def test_build_problem_adapts_initial_mesh():
    config = ProblemConfig('lake_at_rest_1d', resolution=30,
                           initial_adaptations=3)
    state, callbacks = build_problem(config)
    assert not allclose(state.coords.x, MeshCoordinates.uniform(
        config.grid).x)
    assert allclose(callbacks.exact(state.coords, 0.0), state.states)
    assert callbacks.source is None
    static, _ = build_problem(config.replace(mode='static'))
    assert allclose(static.jacobian, 1.0)


@pytest.mark.parametrize('mode', ['static', 'moving'])
def test_lake_at_rest_run(mode, tmp_path):
    config = ProblemConfig('lake_at_rest_1d', resolution=25, end=0.01,
                           outputs=(0.005,), mode=mode)
    artifacts = run(config, tmp_path)
    errors = artifacts.errors
    assert errors.label == 'exact'
    assert errors.error(0, 'h+b', 'linf') < 1e-10
    assert errors.error(0, 'v1', 'linf') < 1e-10
    if mode == 'static':
        assert errors.error(0, 'h', 'linf') < 1e-10
        assert artifacts.energy.is_non_increasing(1e-9)
    assert artifacts.state.t == 0.01
    assert (tmp_path / 'config.yaml').exists()
    assert len(artifacts.files['solution']) == 2
    assert len(artifacts.files['mesh']) == 2
    for name in ('energy.csv', 'gates.csv', 'errors.csv',
                 'solution_t0.010000.csv'):
        assert (tmp_path / name).exists()
    written = ProblemConfig.from_yaml(tmp_path / 'config.yaml')
    assert written == config


def test_run_without_output_writes_nothing():
    config = ProblemConfig('lake_at_rest_1d', resolution=20, end=0.004,
                           every_step_energy=False, mode='static', outputs=())
    artifacts = run(config)
    assert artifacts.directory is None
    assert not any(artifacts.files.values())
    assert len(artifacts.energy) == 1
    assert artifacts.asymmetry is None


def test_simulate_reaches_end_time():
    config = ProblemConfig('lake_at_rest_1d', resolution=20, end=0.004,
                           mode='static', outputs=())
    final = simulate(config)
    assert final.t == 0.004


def test_reference_is_cached(perturbation, tmp_path, monkeypatch):
    first = reference_solution(perturbation, tmp_path)
    assert (tmp_path / f'{first.digest}.npz').exists()
    assert first.states.shape == (4, 40, 1)

    def fail(*args, **kwargs):
        raise AssertionError('Reference was recomputed!')

    monkeypatch.setattr(driver, 'simulate', fail)
    second = reference_solution(perturbation, tmp_path)
    assert second.digest == first.digest
    assert allclose(second.states, first.states)
    assert allclose(second.coords.x, first.coords.x)


def test_reference_errors_in_one_dimension(perturbation, tmp_path):
    reference = reference_solution(perturbation, tmp_path)
    final = simulate(perturbation)
    errors = reference_errors(final, reference)
    assert 0.0 < errors['h']['l1'] < 0.1
    assert errors['v2']['linf'] == 0.0


def test_run_against_reference(perturbation, tmp_path, caplog):
    with caplog.at_level(logging.INFO, logger='swemesh'):
        artifacts = run(perturbation, tmp_path)
    assert artifacts.errors.label == perturbation.replace(
        resolution=(40,), mode='static', reference_resolution=None).digest()
    assert list((tmp_path / 'references').glob('*.npz'))
    assert (tmp_path / 'errors.csv').exists()
    assert 'cache miss' in caplog.text


def test_missing_reference_is_skipped(caplog):
    config = ProblemConfig('perturbed_lake_2d', resolution=(15, 13),
                           end=0.001, outputs=(), mode='static')
    with caplog.at_level(logging.WARNING, logger='swemesh'):
        artifacts = run(config)
    assert artifacts.errors is None
    assert 'Skipping the error report' in caplog.text


def test_reference_needs_resolution(tmp_path):
    with pytest.raises(ConfigError):
        reference_solution(ProblemConfig('lake_at_rest_1d'), tmp_path)


def test_convergence_needs_exact_solution_and_levels():
    with pytest.raises(ConfigError):
        convergence_study(ProblemConfig('perturbation_1d'), 3)
    with pytest.raises(ConfigError):
        convergence_study(ProblemConfig('manufactured', resolution=20), 1)


@pytest.mark.slow
@pytest.mark.parametrize('p, expected', [(1, 1.8), (3, 4.5)])
def test_conservative_scheme_converges(p, expected):
    config = ProblemConfig('manufactured', resolution=20, order=p,
                           kind='ec', mode='static', end=0.1, outputs=())
    report = convergence_study(config, 3)
    assert report.resolutions == ((20,), (40,), (80,))
    assert min(report.orders('h', 'l1')) > expected


@pytest.mark.slow
@pytest.mark.parametrize('kind, expected', [('ec', 5.5), ('es', 4.5)])
def test_schemes_keep_their_order_on_moving_mesh(kind, expected):
    config = ProblemConfig('manufactured', resolution=25, kind=kind,
                           mode='moving', outputs=())
    report = convergence_study(config, 4)
    assert report.resolutions[-1] == (200,)
    errors = report.errors('h', 'l1')
    assert all(fine < coarse for coarse, fine in zip(errors, errors[1:]))
    assert report.orders('h', 'l1')[-1] >= expected


def step_lake(**settings):
    return ProblemConfig('lake_at_rest_1d', resolution=100, outputs=(),
                         options={'topography': 'discontinuous'}, **settings)


def overshoot(states):
    b = states[3]
    return max(b.max() - 4.0, -b.min(), 0.0)


@pytest.mark.parametrize('topography', ['smooth', 'discontinuous'])
@pytest.mark.parametrize('kind, mode', [('ec', 'static'), ('es', 'static'),
                                        ('es', 'moving')])
def test_lake_at_rest_is_preserved(topography, kind, mode):
    config = ProblemConfig('lake_at_rest_1d', resolution=100, outputs=(),
                           options={'topography': topography}, kind=kind,
                           mode=mode)
    errors = run(config).errors
    for variable in ('h+b', 'v1'):
        for norm in ('l1', 'linf'):
            assert errors.error(0, variable, norm) <= 1e-11


def test_ring_dissipation_damps_topography_overshoot():
    with_ring = run(step_lake(kind='es', mode='moving'))
    without = simulate(step_lake(kind='es', mode='moving',
                                 ring_dissipation=False))
    assert overshoot(without.states) > 1e-3
    assert overshoot(with_ring.state.states) < overshoot(without.states)
    for final in (with_ring.state, without):
        level = final.states[0] + final.states[3]
        assert abs_(level - 10.0).max() <= 1e-11
    distances = [min(abs(x1 - 4.0), abs(x1 - 8.0))
                 for _, x1, _, _ in with_ring.gates]
    assert distances
    assert median(distances) < 0.3


@pytest.mark.slow
def test_stable_scheme_energy_decays_on_enlarged_domain():
    config = ProblemConfig('perturbation_1d', options={'enlarged': True},
                           kind='es', mode='static', outputs=(0.05, 0.1,
                                                              0.15))
    energy = run(config).energy
    assert len(energy.times) > 4
    assert energy.is_non_increasing(1e-10)


@pytest.mark.slow
def test_mesh_clusters_at_perturbation():
    ratios, jacobians = [], []

    def observe(state, is_output):
        gaps = diff(state.coords.x1[:, 0])
        ratios.append(gaps.min() / gaps[0])
        jacobians.append(state.jacobian.min())

    config = ProblemConfig('perturbation_1d', kind='es', mode='moving',
                           outputs=())
    simulate(config, observe)
    assert min(ratios) < 0.5
    assert min(jacobians) > 0.0
