"""Registry of test problems for the shallow water solver.

Every problem bundles its physical domain, boundary conditions, gravity,
default resolution, output times, and monitor function together with the
initial data and, where one is known, the exact solution. Initial data are
analytic functions of the node coordinates, so they can be evaluated on
uniform as well as on adapted meshes.

Problems take options (e.g., which topography to use) as a dictionary.
Unknown options or values are rejected with a ``ConfigError``.

"""

__all__ = ['Problem', 'REGISTRY', 'get_problem', 'list_problems',
           'manufactured_source', 'PrimitiveT']

from typing import Callable, Dict, Optional, Sequence, Tuple
from numpy import (ndarray, asarray, zeros, zeros_like, exp, cos,
                   sin, sqrt, where, pi, mod, stack, float64)

from .boundary import PERIODIC, OUTFLOW
from .exceptions import ConfigError
from .grid import MeshCoordinates
from .mesh import MonitorParams

PrimitiveT = Tuple[ndarray, ndarray, ndarray, ndarray]
InitialT = Callable[[ndarray, ndarray, dict], PrimitiveT]
ExactT = Callable[[ndarray, ndarray, float, dict], PrimitiveT]
SourceT = Callable[[ndarray, ndarray, float], ndarray]
DomainT = Callable[[dict], Tuple[Tuple[float, ...], Tuple[float, ...]]]


class Problem:
    """Definition of a test problem.

    Parameters
    ----------
    name: str
        Registry key.
    description: str
        One-line summary shown by the command-line interface.
    domain: callable
        Maps the options to the lower and upper corners of the domain.
    boundaries: sequence of str
        Boundary condition per axis.
    initial: callable
        Maps node coordinates and options to depth, velocities, and
        topography.
    g: float, optional
        Gravitational acceleration. Defaults to 1.
    resolution: sequence of int, optional
        Default number of nodes per axis.
    end_time: float, optional
        Default final time.
    outputs: sequence of float, optional
        Default output times.
    monitor: MonitorParams, optional
        Default monitor function.
    options: dict, optional
        Default options.
    choices: dict, optional
        Admissible values of string-valued options.
    exact: callable, optional
        Exact solution as function of coordinates, time, and options.
    source: callable, optional
        Extra momentum source of a manufactured solution.
    cut: tuple, optional
        Default cut line as ``(axis, value)``.
    reference: sequence of int, optional
        Default resolution of a fine-grid reference run.
    symmetric: bool, optional
        Whether the solution is symmetric under rotation by 90 degrees.
        Defaults to False.

    """
    def __init__(self, name: str, description: str, domain: DomainT,
                 boundaries: Sequence[str], initial: InitialT,
                 g: float = 1.0,
                 resolution: Sequence[int] = (100,),
                 end_time: float = 0.2,
                 outputs: Sequence[float] = (0.2,),
                 monitor: Optional[MonitorParams] = None,
                 options: Optional[dict] = None,
                 choices: Optional[Dict[str, Tuple[str, ...]]] = None,
                 exact: Optional[ExactT] = None,
                 source: Optional[SourceT] = None,
                 cut: Optional[Tuple[int, float]] = None,
                 reference: Optional[Sequence[int]] = None,
                 symmetric: bool = False) -> None:
        self.__name = name
        self.__description = description
        self.__domain = domain
        self.__boundaries = tuple(boundaries)
        self.__initial = initial
        self.__g = float(g)
        self.__resolution = tuple(int(n) for n in resolution)
        self.__end_time = float(end_time)
        self.__outputs = tuple(float(t) for t in outputs)
        self.__monitor = MonitorParams() if monitor is None else monitor
        self.__options = {} if options is None else dict(options)
        self.__choices = {} if choices is None else dict(choices)
        self.__exact = exact
        self.__source = source
        self.__cut = cut
        self.__reference = None if reference is None else tuple(reference)
        self.__symmetric = bool(symmetric)

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        name = f'Name:       {self.__name}\n'
        dimension = f'Dimension:  {self.dimension}\n'
        bcs = f'Boundaries: {self.__boundaries}\n'
        exact = f'Exact:      {self.__exact is not None}'
        return header + divider + name + dimension + bcs + exact

    @property
    def name(self) -> str:
        return self.__name

    @property
    def description(self) -> str:
        return self.__description

    @property
    def dimension(self) -> int:
        return len(self.__boundaries)

    @property
    def boundaries(self) -> Tuple[str, ...]:
        return self.__boundaries

    @property
    def g(self) -> float:
        return self.__g

    @property
    def resolution(self) -> Tuple[int, ...]:
        return self.__resolution

    @property
    def end_time(self) -> float:
        return self.__end_time

    @property
    def outputs(self) -> Tuple[float, ...]:
        return self.__outputs

    @property
    def monitor(self) -> MonitorParams:
        return self.__monitor

    @property
    def options(self) -> dict:
        """Default options."""
        return dict(self.__options)

    @property
    def has_exact(self) -> bool:
        return self.__exact is not None

    @property
    def has_source(self) -> bool:
        return self.__source is not None

    @property
    def cut(self) -> Optional[Tuple[int, float]]:
        return self.__cut

    @property
    def reference(self) -> Optional[Tuple[int, ...]]:
        return self.__reference

    @property
    def symmetric(self) -> bool:
        """Is the solution invariant under rotation by 90 degrees?"""
        return self.__symmetric

    def resolved(self, options: Optional[dict] = None) -> dict:
        """Default options updated by the given ones, after validation."""
        resolved = self.options
        for key, value in (options or {}).items():
            if key not in resolved:
                msg = (f'Problem "{self.__name}" has no option "{key}"! '
                       f'Known options are {sorted(resolved)}.')
                raise ConfigError(msg)
            allowed = self.__choices.get(key)
            if allowed is not None and value not in allowed:
                msg = (f'Option "{key}" of problem "{self.__name}" must be '
                       f'one of {allowed}, not "{value}"!')
                raise ConfigError(msg)
            resolved[key] = value
        return resolved

    def bounds(self, options: Optional[dict] = None) -> tuple:
        """Lower and upper corners of the domain."""
        return self.__domain(self.resolved(options))

    def primitive(self, coords: MeshCoordinates,
                  options: Optional[dict] = None) -> ndarray:
        """Initial depth, velocities, and topography at the mesh nodes."""
        values = self.__initial(coords.x1, coords.x2, self.resolved(options))
        return _stacked(values, coords.x1)

    def initial_states(self, coords: MeshCoordinates,
                       options: Optional[dict] = None) -> ndarray:
        """Initial conserved variables at the mesh nodes."""
        return _conserved(self.primitive(coords, options))

    def exact_states(self, coords: MeshCoordinates, t: float,
                     options: Optional[dict] = None) -> Optional[ndarray]:
        """Exact conserved variables at time `t`, if known."""
        if self.__exact is None:
            return None
        values = self.__exact(coords.x1, coords.x2, t, self.resolved(options))
        return _conserved(_stacked(values, coords.x1))

    def source_term(self) -> Optional[Callable[[MeshCoordinates, float],
                                               ndarray]]:
        """Extra source as function of the mesh and time, if any."""
        if self.__source is None:
            return None
        source = self.__source

        def evaluate(coords: MeshCoordinates, t: float) -> ndarray:
            return source(coords.x1, coords.x2, t)

        return evaluate


def _stacked(values: PrimitiveT, like: ndarray) -> ndarray:
    return stack([asarray(v, dtype=float64) + zeros_like(like)
                  for v in values])


def _conserved(primitive: ndarray) -> ndarray:
    h, v1, v2, b = primitive
    return stack([h, h * v1, h * v2, b])


def _fixed(lower: Sequence[float], upper: Sequence[float]) -> DomainT:
    bounds = (tuple(lower), tuple(upper))

    def domain(options: dict) -> tuple:
        return bounds

    return domain


def _at_rest(h: ndarray, b: ndarray) -> PrimitiveT:
    zero = zeros_like(h)
    return h, zero, zero, b


# Manufactured solution

def _manufactured_exact(x1: ndarray, x2: ndarray, t: float,
                        options: dict) -> PrimitiveT:
    h = 4.0 + cos(pi * x1) * cos(pi * t)
    v1 = sin(pi * x1) * sin(pi * t) / h
    return h, v1, zeros_like(h), 1.5 + sin(pi * x1)


def _manufactured_initial(x1: ndarray, x2: ndarray,
                          options: dict) -> PrimitiveT:
    return _manufactured_exact(x1, x2, 0.0, options)


def manufactured_source(x1: ndarray, x2: ndarray, t: float) -> ndarray:
    """Momentum source making the manufactured solution exact for g = 1."""
    x1 = asarray(x1, dtype=float64)
    cx, sx = cos(pi * x1), sin(pi * x1)
    ct, st = cos(pi * t), sin(pi * t)
    h = ct * cx + 4.0
    momentum = (4.0 * pi * cx + pi * ct * cx ** 2 - 3.0 * pi * ct * sx
                - pi * ct ** 2 * cx * sx
                + pi * ct * st ** 2 * sx ** 3 / h ** 2
                + 2.0 * pi * cx * st ** 2 * sx / h)
    source = zeros((4,) + x1.shape)
    source[1] = momentum
    return source


# One-dimensional lake at rest

def _step_1d(x: ndarray, left: float, right: float, height: float) -> ndarray:
    return where((x >= left) & (x <= right), height, 0.0)


def _lake_1d(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    if options['topography'] == 'smooth':
        b = 5.0 * exp(-0.4 * (x1 - 5.0) ** 2)
    else:
        b = _step_1d(x1, 4.0, 8.0, 4.0)
    return _at_rest(10.0 - b, b)


def _lake_1d_exact(x1: ndarray, x2: ndarray, t: float,
                   options: dict) -> PrimitiveT:
    return _lake_1d(x1, x2, options)


# Small perturbation of a lake at rest over a hump

def _perturbation_domain(options: dict) -> tuple:
    if options['enlarged']:
        return (-5.0,), (5.0,)
    return (0.0,), (2.0,)


def _perturbation_1d(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    hump = (x1 >= 1.4) & (x1 <= 1.6)
    b = where(hump, 0.25 * (cos(10.0 * pi * (x1 - 1.5)) + 1.0), 0.0)
    bump = (x1 >= 1.1) & (x1 <= 1.2)
    h = 1.0 - b + where(bump, float(options['epsilon']), 0.0)
    return _at_rest(h, b)


# Moving vortex

VORTEX_PERIOD = 20.0


def _vortex(x1: ndarray, x2: ndarray, t: float, options: dict) -> PrimitiveT:
    g, h_max, v_max = 1.0, options['h_max'], options['v_max']
    shift = 0.5 * VORTEX_PERIOD
    y1 = mod(x1 - t + shift, VORTEX_PERIOD) - shift
    y2 = mod(x2 - t + shift, VORTEX_PERIOD) - shift
    r2 = y1 * y1 + y2 * y2
    h = h_max - v_max ** 2 * exp(1.0 - r2) / (2.0 * g)
    swirl = v_max * exp(0.5 * (1.0 - r2))
    return h, 1.0 - swirl * y2, 1.0 + swirl * y1, zeros_like(h)


def _vortex_initial(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    return _vortex(x1, x2, 0.0, options)


# Two-dimensional lake at rest

def _lake_2d(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    if options['topography'] == 'smooth':
        b = 0.8 * exp(-50.0 * ((x1 - 0.5) ** 2 + (x2 - 0.5) ** 2))
    else:
        square = (x1 >= 0.3) & (x1 <= 0.5) & (x2 >= 0.3) & (x2 <= 0.5)
        b = where(square, 0.5, 0.0)
    return _at_rest(1.0 - b, b)


def _lake_2d_exact(x1: ndarray, x2: ndarray, t: float,
                   options: dict) -> PrimitiveT:
    return _lake_2d(x1, x2, options)


# Perturbed lake over an oval hump

def _perturbed_lake(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    b = 0.8 * exp(-5.0 * (x1 - 0.9) ** 2 - 50.0 * (x2 - 0.5) ** 2)
    strip = (x1 >= 0.05) & (x1 <= 0.15)
    h = 1.0 - b + where(strip, float(options['epsilon']), 0.0)
    return _at_rest(h, b)


# Circular dam breaks

def _circular_dam(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    inside = sqrt((x1 - 25.0) ** 2 + (x2 - 25.0) ** 2) <= 11.0
    h = where(inside, 10.0, 1.0)
    return _at_rest(h, zeros_like(h))


def _dam_break_bump(x1: ndarray, x2: ndarray, options: dict) -> PrimitiveT:
    on_bump = sqrt((x1 - 1.5) ** 2 + (x2 - 1.0) ** 2) <= 0.5
    bump = (cos(2.0 * pi * (x1 - 0.5)) + 1.0) * (cos(2.0 * pi * x2) + 1.0)
    b = where(on_bump, 0.125 * bump, 0.0)
    column = sqrt((x1 - 1.25) ** 2 + (x2 - 1.0) ** 2) <= 0.1
    h = where(column, 1.1, 0.6) - b
    return _at_rest(h, b)


def _surface_monitor(theta: float) -> MonitorParams:
    return MonitorParams(('h+b',), (theta,), power=1.0)


REGISTRY: Dict[str, Problem] = {problem.name: problem for problem in (
    Problem('manufactured',
            'Smooth 1D manufactured solution with extra source (periodic).',
            _fixed((0.0,), (2.0,)), (PERIODIC,), _manufactured_initial,
            resolution=(100,), end_time=0.2, outputs=(0.2,),
            monitor=MonitorParams(('h+b',), (10.0,)),
            exact=_manufactured_exact, source=manufactured_source),
    Problem('lake_at_rest_1d',
            '1D lake at rest over a Gaussian or a square step.',
            _fixed((0.0,), (10.0,)), (OUTFLOW,), _lake_1d,
            resolution=(100,), end_time=0.2, outputs=(0.2,),
            monitor=MonitorParams(('h',), (100.0,), power=1.0),
            options={'topography': 'smooth'},
            choices={'topography': ('smooth', 'discontinuous')},
            exact=_lake_1d_exact),
    Problem('perturbation_1d',
            'Small perturbation of a 1D lake at rest over a hump.',
            _perturbation_domain, (OUTFLOW,), _perturbation_1d, g=9.812,
            resolution=(200,), end_time=0.2, outputs=(0.2,),
            monitor=_surface_monitor(100.0),
            options={'epsilon': 0.2, 'enlarged': False},
            reference=(3000,)),
    Problem('moving_vortex',
            'Vortex advected with velocity (1, 1) on a periodic box.',
            _fixed((-10.0, -10.0), (10.0, 10.0)), (PERIODIC, PERIODIC),
            _vortex_initial, resolution=(40, 40), end_time=2.0,
            outputs=(2.0,),
            monitor=MonitorParams(('h+b',), (15.0,), (10.0,)),
            options={'h_max': 1.0, 'v_max': 0.2}, exact=_vortex),
    Problem('lake_at_rest_2d',
            '2D lake at rest over a Gaussian or a square block.',
            _fixed((0.0, 0.0), (1.0, 1.0)), (OUTFLOW, OUTFLOW), _lake_2d,
            resolution=(100, 100), end_time=0.1, outputs=(0.1,),
            monitor=MonitorParams(('h',), (100.0,), power=1.0),
            options={'topography': 'smooth'},
            choices={'topography': ('smooth', 'discontinuous')},
            exact=_lake_2d_exact),
    Problem('perturbed_lake_2d',
            'Perturbation travelling over an oval hump in a lake at rest.',
            _fixed((0.0, 0.0), (2.0, 1.0)), (OUTFLOW, OUTFLOW),
            _perturbed_lake, g=9.812, resolution=(100, 50), end_time=0.6,
            outputs=(0.12, 0.24, 0.36, 0.48, 0.6),
            monitor=_surface_monitor(800.0), options={'epsilon': 0.01}),
    Problem('circular_dam_break',
            'Circular dam break over a flat bottom.',
            _fixed((0.0, 0.0), (50.0, 50.0)), (OUTFLOW, OUTFLOW),
            _circular_dam, g=9.812, resolution=(100, 100), end_time=1.0,
            outputs=(0.2, 0.4, 0.6, 0.8, 1.0),
            monitor=_surface_monitor(800.0), symmetric=True),
    Problem('dam_break_bump',
            'Circular dam break next to a bump in the river bed.',
            _fixed((0.0, 0.0), (2.0, 2.0)), (OUTFLOW, OUTFLOW),
            _dam_break_bump, g=9.812, resolution=(100, 100), end_time=0.15,
            outputs=(0.15,), monitor=_surface_monitor(800.0),
            cut=(1, 1.0)),
)}


def get_problem(name: str) -> Problem:
    """Look up a problem by name.

    Raises
    ------
    ConfigError
        If there is no such problem.

    """
    try:
        return REGISTRY[name]
    except KeyError:
        msg = f'Unknown problem "{name}"! Use one of {sorted(REGISTRY)}.'
        raise ConfigError(msg) from None


def list_problems() -> Tuple[Tuple[str, str], ...]:
    """Names and descriptions of all registered problems."""
    return tuple((name, REGISTRY[name].description)
                 for name in sorted(REGISTRY))
