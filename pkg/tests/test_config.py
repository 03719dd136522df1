import pytest
import yaml

from swemesh.config import ProblemConfig
from swemesh.exceptions import ConfigError
from swemesh.mesh import MonitorParams
from swemesh.problems import get_problem
from swemesh.schemes import EnergyConservative, EnergyStable


def test_defaults_follow_problem():
    config = ProblemConfig('lake_at_rest_1d')
    problem = get_problem('lake_at_rest_1d')
    assert config.kind == 'es'
    assert config.order.p == 3
    assert config.moving
    assert config.resolution == problem.resolution
    assert config.end == problem.end_time
    assert config.outputs == problem.outputs
    assert config.monitor == problem.monitor
    assert config.options == {'topography': 'smooth'}
    assert not config.source
    assert config.ring_dissipation
    assert config.reference_mode == 'static'
    assert config.dt_max is None


def test_manufactured_solution_adds_source():
    assert ProblemConfig('manufactured').source
    assert not ProblemConfig('manufactured', source=False).source


def test_derived_objects():
    config = ProblemConfig('lake_at_rest_2d', resolution=(30, 20), g=2.0,
                           kind='ec', mode='static')
    assert isinstance(config.scheme(), EnergyConservative)
    assert config.scheme().params.g == 2.0
    assert config.adaptor() is None
    assert config.grid.shape == (30, 20)
    assert config.grid.upper == (1.0, 1.0)
    stable = config.replace(kind='es', mode='moving', ring_dissipation=False)
    assert isinstance(stable.scheme(), EnergyStable)
    assert not stable.scheme().ring_dissipation
    assert stable.adaptor().order == stable.order


def test_dump_and_load_give_equal_config():
    config = ProblemConfig('perturbation_1d', resolution=50, order=2,
                           options={'epsilon': 0.001}, outputs=[0.1, 0.05])
    document = yaml.safe_load(config.dump())
    assert ProblemConfig.from_dict(document) == config
    assert config.outputs == (0.05, 0.1)
    assert document['problem']['resolution'] == [50]


def test_from_yaml(tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text('problem:\n  name: moving_vortex\n  resolution: [24, 24]\n'
                    'scheme:\n  kind: ec\ntime:\n  end: 0.5\n  outputs: 0.25\n'
                    'mesh:\n  monitor:\n    sigmas: [h]\n    thetas: [5.0]\n')
    config = ProblemConfig.from_yaml(path)
    assert config.name == 'moving_vortex'
    assert config.kind == 'ec'
    assert config.outputs == (0.25,)
    assert config.monitor == MonitorParams(('h',), (5.0,), (0.0,))


def test_unreadable_yaml(tmp_path):
    with pytest.raises(ConfigError):
        ProblemConfig.from_yaml(tmp_path / 'missing.yaml')
    broken = tmp_path / 'broken.yaml'
    broken.write_text('problem: [unclosed\n')
    with pytest.raises(ConfigError):
        ProblemConfig.from_yaml(broken)


def test_digest_identifies_settings():
    config = ProblemConfig('lake_at_rest_1d', resolution=40)
    assert config.digest() == ProblemConfig('lake_at_rest_1d',
                                            resolution=(40,)).digest()
    assert config.digest() != config.replace(resolution=41).digest()
    assert len(config.digest()) == 64


def test_replace_keeps_given_settings():
    config = ProblemConfig('lake_at_rest_1d', resolution=40,
                           options={'topography': 'discontinuous'})
    changed = config.replace(order=2)
    assert changed.resolution == (40,)
    assert changed.options == {'topography': 'discontinuous'}
    assert changed.order.p == 2
    other = ProblemConfig('lake_at_rest_1d', kind='ec',
                          options={'topography': 'discontinuous'})
    vortex = other.replace(name='moving_vortex')
    assert vortex.kind == 'ec'
    assert vortex.options == get_problem('moving_vortex').options


@pytest.mark.parametrize('settings', [
    {'resolution': 40, 'speed': 2.0},
    {'kind': 'weno'},
    {'mode': 'fast'},
    {'order': 4},
    {'order': 2.5},
    {'resolution': 12},
    {'resolution': (40, 40)},
    {'end': 0.0},
    {'cfl': -0.1},
    {'dt_max': 0.0},
    {'outputs': (0.1, 0.5)},
    {'initial_adaptations': -1},
    {'source': True},
    {'ring_dissipation': 'yes'},
    {'monitor': {'sigmas': ['vorticity'], 'thetas': [1.0]}},
    {'monitor': 'h'},
    {'g': 0.0},
    {'options': {'topography': 'rough'}},
    {'reference_mode': 'adaptive'},
])
def test_invalid_settings(settings):
    with pytest.raises(ConfigError):
        ProblemConfig('lake_at_rest_1d', **settings)


def test_order_sets_minimum_resolution():
    assert ProblemConfig('lake_at_rest_1d', order=1,
                         resolution=9).resolution == (9,)
    with pytest.raises(ConfigError):
        ProblemConfig('lake_at_rest_1d', order=2, resolution=9)


@pytest.mark.parametrize('document', [
    [],
    {'problem': {'resolution': 40}},
    {'problem': {'name': 'lake_at_rest_1d'}, 'plots': {'dpi': 100}},
    {'problem': {'name': 'lake_at_rest_1d', 'colour': 'blue'}},
    {'problem': {'name': 'lake_at_rest_1d'}, 'time': 0.5},
])
def test_invalid_documents(document):
    with pytest.raises(ConfigError):
        ProblemConfig.from_dict(document)


def test_unknown_problem():
    with pytest.raises(ConfigError):
        ProblemConfig('tsunami')
