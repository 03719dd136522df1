"""Problem configuration read from YAML documents.

A configuration names a problem from the registry and overrides any of its
defaults. The document is organised in sections::

    problem:   name, options, resolution, source
    physics:   g, gamma
    scheme:    kind, order, ring_dissipation
    mesh:      mode, monitor, initial_adaptations
    time:      end, outputs, cfl, dt_max, dt_exponent
    output:    every_step_energy
    reference: resolution, mesh

Missing entries take the defaults of the selected problem. Every value is
validated on construction and errors are reported as ``ConfigError``.

"""
import json
import hashlib
from typing import Any, Dict, Optional, Tuple, Union
import yaml

from .boundary import HALO
from .exceptions import ConfigError
from .grid import ComputationalGrid
from .mesh import MeshAdaptor, MonitorParams
from .metrics import SchemeOrder
from .problems import Problem, get_problem
from .schemes import EnergyConservative, EnergyStable
from .schemes.base import BaseScheme
from .state import PhysicsParams

SCHEMES = ('ec', 'es')
MODES = ('static', 'moving')

SECTIONS = {
    'problem': {'name': 'name', 'options': 'options',
                'resolution': 'resolution', 'source': 'source'},
    'physics': {'g': 'g', 'gamma': 'gamma'},
    'scheme': {'kind': 'kind', 'order': 'order',
               'ring_dissipation': 'ring_dissipation'},
    'mesh': {'mode': 'mode', 'monitor': 'monitor',
             'initial_adaptations': 'initial_adaptations'},
    'time': {'end': 'end', 'outputs': 'outputs', 'cfl': 'cfl',
             'dt_max': 'dt_max', 'dt_exponent': 'dt_exponent'},
    'output': {'every_step_energy': 'every_step_energy'},
    'reference': {'resolution': 'reference_resolution',
                  'mesh': 'reference_mode'},
}
FIELDS = tuple(field for keys in SECTIONS.values() for field in keys.values())


def _defaults(problem: Problem) -> Dict[str, Any]:
    return {'name': problem.name,
            'options': problem.options,
            'resolution': problem.resolution,
            'source': problem.has_source,
            'g': problem.g,
            'gamma': 1.0,
            'kind': 'es',
            'order': 3,
            'ring_dissipation': True,
            'mode': 'moving',
            'monitor': problem.monitor,
            'initial_adaptations': 0,
            'end': problem.end_time,
            'outputs': problem.outputs,
            'cfl': 0.4,
            'dt_max': None,
            'dt_exponent': None,
            'every_step_energy': True,
            'reference_resolution': problem.reference,
            'reference_mode': 'static'}


class ProblemConfig:
    """Validated settings of one simulation run.

    Parameters
    ----------
    name: str
        Name of a registered problem.
    **settings
        Overrides of the problem defaults, keyed by the flat field names
        ``options``, ``resolution``, ``source``, ``g``, ``gamma``, ``kind``,
        ``order``, ``ring_dissipation``, ``mode``, ``monitor``,
        ``initial_adaptations``, ``end``, ``outputs``, ``cfl``, ``dt_max``,
        ``dt_exponent``, ``every_step_energy``, ``reference_resolution``,
        and ``reference_mode``.

    Raises
    ------
    ConfigError
        If the problem is unknown or any setting is invalid.

    """
    def __init__(self, name: str, **settings: Any) -> None:
        unknown = set(settings) - set(FIELDS)
        if unknown:
            raise ConfigError(f'Unknown settings {sorted(unknown)}!')
        self.__problem = get_problem(name)
        self.__given = dict(settings)
        values = _defaults(self.__problem)
        values.update({k: v for k, v in settings.items() if v is not None
                       or k in ('dt_max', 'dt_exponent',
                                'reference_resolution')})
        self.__values = self.__validated(self.__problem, values)

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        v = self.__values
        name = f'Problem:    {v["name"]}\n'
        resolution = f'Resolution: {v["resolution"]}\n'
        scheme = f'Scheme:     {v["kind"]} (p = {v["order"]})\n'
        mesh = f'Mesh:       {v["mode"]}\n'
        end = f'End time:   {v["end"]}'
        return header + divider + name + resolution + scheme + mesh + end

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemConfig):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> 'ProblemConfig':
        """Build a configuration from a nested document."""
        if not isinstance(document, dict):
            raise ConfigError('A configuration must be a mapping of sections!')
        settings = {}
        for section, content in document.items():
            if section not in SECTIONS:
                msg = f'Unknown section "{section}"! Use {sorted(SECTIONS)}.'
                raise ConfigError(msg)
            if content is None:
                continue
            if not isinstance(content, dict):
                raise ConfigError(f'Section "{section}" must be a mapping!')
            for key, value in content.items():
                if key not in SECTIONS[section]:
                    msg = (f'Unknown key "{key}" in section "{section}"! '
                           f'Use {sorted(SECTIONS[section])}.')
                    raise ConfigError(msg)
                settings[SECTIONS[section][key]] = value
        if 'name' not in settings:
            raise ConfigError('The problem section must name a problem!')
        name = settings.pop('name')
        return cls(name, **settings)

    @classmethod
    def from_yaml(cls, path: str) -> 'ProblemConfig':
        """Read a configuration from a YAML file."""
        try:
            with open(str(path), encoding='utf-8') as stream:
                document = yaml.safe_load(stream)
        except (OSError, yaml.YAMLError) as error:
            msg = f'Cannot read config "{path}": {error}'
            raise ConfigError(msg) from None
        return cls.from_dict(document or {})

    @property
    def problem(self) -> Problem:
        return self.__problem

    @property
    def name(self) -> str:
        return self.__values['name']

    @property
    def options(self) -> dict:
        return dict(self.__values['options'])

    @property
    def dimension(self) -> int:
        return self.__problem.dimension

    @property
    def resolution(self) -> Tuple[int, ...]:
        return self.__values['resolution']

    @property
    def source(self) -> bool:
        """Whether the manufactured source term is added."""
        return self.__values['source']

    @property
    def kind(self) -> str:
        return self.__values['kind']

    @property
    def mode(self) -> str:
        return self.__values['mode']

    @property
    def moving(self) -> bool:
        return self.__values['mode'] == 'moving'

    @property
    def ring_dissipation(self) -> bool:
        return self.__values['ring_dissipation']

    @property
    def monitor(self) -> MonitorParams:
        return self.__values['monitor']

    @property
    def initial_adaptations(self) -> int:
        return self.__values['initial_adaptations']

    @property
    def end(self) -> float:
        return self.__values['end']

    @property
    def outputs(self) -> Tuple[float, ...]:
        return self.__values['outputs']

    @property
    def cfl(self) -> float:
        return self.__values['cfl']

    @property
    def dt_max(self) -> Optional[float]:
        return self.__values['dt_max']

    @property
    def dt_exponent(self) -> Optional[float]:
        return self.__values['dt_exponent']

    @property
    def every_step_energy(self) -> bool:
        return self.__values['every_step_energy']

    @property
    def reference_resolution(self) -> Optional[Tuple[int, ...]]:
        return self.__values['reference_resolution']

    @property
    def reference_mode(self) -> str:
        return self.__values['reference_mode']

    @property
    def params(self) -> PhysicsParams:
        return PhysicsParams(self.__values['g'], self.__values['gamma'])

    @property
    def order(self) -> SchemeOrder:
        return SchemeOrder(self.__values['order'])

    @property
    def grid(self) -> ComputationalGrid:
        lower, upper = self.__problem.bounds(self.options)
        return ComputationalGrid(self.resolution, lower, upper,
                                 self.__problem.boundaries)

    def scheme(self) -> BaseScheme:
        """The configured semi-discrete scheme."""
        if self.kind == 'ec':
            return EnergyConservative(self.params)
        return EnergyStable(self.params, self.ring_dissipation)

    def adaptor(self) -> Optional[MeshAdaptor]:
        """Mesh adaptation, or None for a static mesh."""
        if not self.moving:
            return None
        return MeshAdaptor(self.monitor, self.order)

    def replace(self, **changes: Any) -> 'ProblemConfig':
        """A copy with some settings changed.

        Changing the problem name resets all settings that were not
        explicitly given to the defaults of the new problem.

        """
        given = dict(self.__given)
        name = changes.pop('name', self.name)
        if name != self.name:
            given.pop('options', None)
            given.pop('source', None)
        given.update(changes)
        return ProblemConfig(name, **given)

    def as_dict(self) -> Dict[str, Dict[str, Any]]:
        """Fully resolved settings as nested, YAML-ready document."""
        flat = dict(self.__values)
        flat['monitor'] = self.monitor.as_dict()
        flat['resolution'] = list(self.resolution)
        flat['outputs'] = list(self.outputs)
        if flat['reference_resolution'] is not None:
            flat['reference_resolution'] = list(flat['reference_resolution'])
        return {section: {key: flat[field] for key, field in keys.items()}
                for section, keys in SECTIONS.items()}

    def dump(self) -> str:
        """YAML rendering of :meth:`as_dict`."""
        return yaml.safe_dump(self.as_dict(), sort_keys=False)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON rendering of all settings."""
        canonical = json.dumps(self.as_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @staticmethod
    def __validated(problem: Problem, v: Dict[str, Any]) -> Dict[str, Any]:
        v['options'] = problem.resolved(v['options'])
        v['kind'] = str(v['kind']).lower()
        if v['kind'] not in SCHEMES:
            raise ConfigError(f'Scheme must be one of {SCHEMES}, '
                              f'not "{v["kind"]}"!')
        v['mode'] = str(v['mode']).lower()
        if v['mode'] not in MODES:
            raise ConfigError(f'Mesh mode must be one of {MODES}, '
                              f'not "{v["mode"]}"!')
        v['reference_mode'] = str(v['reference_mode']).lower()
        if v['reference_mode'] not in MODES:
            raise ConfigError(f'Reference mesh must be one of {MODES}, '
                              f'not "{v["reference_mode"]}"!')
        v['order'] = _integer(v['order'], 'order')
        if v['order'] not in (1, 2, 3):
            raise ConfigError(f'Order must be 1, 2, or 3, not {v["order"]}!')
        minimum = 2 * v['order'] + 1 + 2 * HALO
        v['resolution'] = _resolution(v['resolution'], problem.dimension,
                                      minimum, 'resolution')
        if v['reference_resolution'] is not None:
            v['reference_resolution'] = _resolution(
                v['reference_resolution'], problem.dimension, minimum,
                'reference resolution')
        for key in ('g', 'gamma', 'end', 'cfl'):
            v[key] = _real(v[key], key)
        try:
            PhysicsParams(v['g'], v['gamma'])
        except ValueError as error:
            raise ConfigError(str(error)) from None
        if not v['end'] > 0.0:
            raise ConfigError(f'End time must be positive, not {v["end"]}!')
        if not v['cfl'] > 0.0:
            raise ConfigError(f'CFL number must be positive, not {v["cfl"]}!')
        for key in ('dt_max', 'dt_exponent'):
            if v[key] is not None:
                v[key] = _real(v[key], key)
                if not v[key] > 0.0:
                    raise ConfigError(f'{key} must be positive, not {v[key]}!')
        outputs = v['outputs']
        if isinstance(outputs, (int, float)):
            outputs = [outputs]
        v['outputs'] = tuple(sorted(_real(t, 'output time') for t in outputs))
        for t in v['outputs']:
            if not 0.0 <= t <= v['end']:
                msg = f'Output time {t} lies outside [0, {v["end"]}]!'
                raise ConfigError(msg)
        v['initial_adaptations'] = _integer(v['initial_adaptations'],
                                            'initial_adaptations')
        if v['initial_adaptations'] < 0:
            raise ConfigError('Initial adaptations must not be negative!')
        v['monitor'] = _monitor(v['monitor'], problem.monitor)
        for key in ('source', 'ring_dissipation', 'every_step_energy'):
            if not isinstance(v[key], bool):
                msg = f'{key} must be true or false, not {v[key]}!'
                raise ConfigError(msg)
        if v['source'] and not problem.has_source:
            raise ConfigError(f'Problem "{problem.name}" has no source term!')
        return v


def _real(value: Any, name: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f'{name} must be a number, not {value!r}!') from None


def _integer(value: Any, name: str) -> int:
    if isinstance(value, bool) or not float(_real(value, name)).is_integer():
        raise ConfigError(f'{name} must be an integer, not {value!r}!')
    return int(value)


def _resolution(value: Any, dimension: int, minimum: int,
                name: str) -> Tuple[int, ...]:
    if isinstance(value, (int, float)):
        value = [value]
    resolution = tuple(_integer(n, name) for n in value)
    if len(resolution) != dimension:
        msg = (f'The {name} {resolution} does not fit a problem of '
               f'dimension {dimension}!')
        raise ConfigError(msg)
    if any(n < minimum for n in resolution):
        msg = (f'The {name} {resolution} needs at least {minimum} nodes'
               f' per axis!')
        raise ConfigError(msg)
    return resolution


def _monitor(value: Union[MonitorParams, dict],
             default: MonitorParams) -> MonitorParams:
    if isinstance(value, MonitorParams):
        return value
    if not isinstance(value, dict):
        raise ConfigError(f'Monitor must be a mapping, not {value!r}!')
    settings = default.as_dict()
    if 'sigmas' in value:
        settings.pop('thetas')
        settings.pop('laplacians')
    settings.update(value)
    try:
        return MonitorParams(**settings)
    except (TypeError, ValueError) as error:
        raise ConfigError(f'Invalid monitor: {error}') from None
