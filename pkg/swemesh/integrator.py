"""Explicit SSP-RK3 time integration of the coupled ``(JU, J, x)`` system."""
import logging
from typing import Callable, Optional, Sequence, Tuple
from numpy import (ndarray, asarray, zeros, argmin, unravel_index,
                   any as any_, float64)
from tqdm import tqdm

from .boundary import HALO
from .dissipation import spectral_radius
from .exceptions import PositivityError, MeshTanglingError
from .grid import ComputationalGrid, MeshCoordinates
from .mesh import MeshAdaptor
from .metrics import MeshMetrics, SchemeOrder, spatial_metrics
from .schemes.base import BaseScheme
from .state import POSITIVITY_THRESHOLD, PhysicsParams, StateT, validated
from .stencil import interior

logger = logging.getLogger(__name__)

DEFAULT_CFL = 0.4

Operator = Callable[[ndarray, ndarray, MeshCoordinates, float],
                    Tuple[ndarray, ndarray]]
Source = Callable[[MeshCoordinates, float], ndarray]
Observer = Callable[['SimulationState', bool], None]


class SimulationState:
    """Jacobian-weighted states, Jacobian, and mesh at one instant.

    Parameters
    ----------
    calU: ndarray
        The evolved variables :math:`JU`, shape ``(4, N1, N2)``.
    jacobian: ndarray
        The evolved Jacobian, shape ``(N1, N2)``.
    coords: MeshCoordinates
        The physical mesh.
    t: float, optional
        Simulation time. Defaults to 0.
    xdot: ndarray, optional
        Mesh velocity of the step that led to this state.

    Raises
    ------
    ValueError
        If shapes do not agree.
    MeshTanglingError
        If the Jacobian is not positive somewhere.
    PositivityError
        If a depth is not positive.

    """
    def __init__(self, calU: ndarray, jacobian: ndarray,
                 coords: MeshCoordinates, t: float = 0.0,
                 xdot: Optional[ndarray] = None) -> None:
        self.__calU = asarray(calU, dtype=float64)
        self.__J = asarray(jacobian, dtype=float64)
        self.__coords = coords
        self.__t = float(t)
        self.__xdot = xdot
        self.__validate()

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        time = f'Time:         {self.__t}\n'
        shape = f'Shape:        {self.__J.shape}\n'
        jacobian = f'Min Jacobian: {self.__J.min()}'
        return header + divider + time + shape + jacobian

    @classmethod
    def from_states(cls, states: StateT, coords: MeshCoordinates,
                    order: SchemeOrder, t: float = 0.0) -> 'SimulationState':
        """Weight states with the discrete Jacobian of the mesh."""
        jacobian = spatial_metrics(coords, order).jacobian
        return cls(validated(states) * jacobian, jacobian, coords, t)

    @property
    def calU(self) -> ndarray:
        """Jacobian-weighted conserved variables."""
        return self.__calU

    @property
    def jacobian(self) -> ndarray:
        return self.__J

    @property
    def coords(self) -> MeshCoordinates:
        return self.__coords

    @property
    def grid(self) -> ComputationalGrid:
        return self.__coords.grid

    @property
    def t(self) -> float:
        return self.__t

    @property
    def xdot(self) -> Optional[ndarray]:
        """Mesh velocity of the last step, if the mesh moved."""
        return self.__xdot

    @property
    def states(self) -> ndarray:
        """Conserved variables :math:`U = \\mathcal{U}/J`."""
        return self.__calU / self.__J

    def at_time(self, t: float) -> 'SimulationState':
        """The same fields relabelled with a new time."""
        return SimulationState(self.__calU, self.__J, self.__coords,
                               t, self.__xdot)

    def __validate(self) -> None:
        shape = self.__coords.grid.shape
        if self.__J.shape != shape or self.__calU.shape != (4,) + shape:
            msg = (f'Fields of shapes {self.__calU.shape} and {self.__J.shape}'
                   f' do not fit the mesh of shape {shape}!')
            raise ValueError(msg)
        if any_(~(self.__J > 0.0)):
            node, value = _smallest(self.__J)
            msg = f'Jacobian {value} at node {node} is not positive!'
            raise MeshTanglingError(msg, node=node, value=value)
        check_positivity(self.__calU, self.__J, self.__t)


def _smallest(field: ndarray) -> Tuple[Tuple[int, ...], float]:
    node = tuple(int(i) for i in unravel_index(argmin(field), field.shape))
    return node, float(field[node])


def check_positivity(calU: ndarray, jacobian: ndarray, t: float) -> None:
    """Raise if any depth :math:`\\mathcal{U}_1/J` is below the threshold."""
    h = calU[0] / jacobian
    if any_(~(h >= POSITIVITY_THRESHOLD)):
        node, value = _smallest(h)
        msg = f'Water depth {value} at node {node} and time {t}!'
        raise PositivityError(msg, node=node, value=value, time=t)


def cfl_dt(state: SimulationState, metrics: MeshMetrics,
           params: PhysicsParams, cfl: float = DEFAULT_CFL,
           dt_max: Optional[float] = None) -> float:
    """Largest stable time step under the CFL condition.

    Parameters
    ----------
    state: SimulationState
        The current state.
    metrics: MeshMetrics
        Metrics of the current mesh, with the temporal terms of the mesh
        velocity of the previous step.
    params: PhysicsParams
        Physical constants.
    cfl: float, optional
        The CFL number. Defaults to 0.4.
    dt_max: float, optional
        Fallback when all wave and mesh speeds vanish.

    Returns
    -------
    float
        :math:`C/\\sum_\\ell\\max(\\varrho_\\ell/J)/\\Delta\\xi_\\ell`.

    Raises
    ------
    ValueError
        If all speeds vanish and no fallback is given.

    """
    if not cfl > 0.0:
        raise ValueError(f'CFL number must be positive, not {cfl}!')
    grid = metrics.grid
    U = state.states
    denominator = 0.0
    for axis in grid.axes:
        triple = interior(metrics.triple(axis), HALO)
        speed = spectral_radius(U, triple, params) / state.jacobian
        denominator += speed.max() / grid.spacing[axis]
    if denominator > 0.0:
        return cfl / denominator
    if dt_max is None:
        raise ValueError('All speeds vanish and there is no maximum dt!')
    logger.warning('All speeds vanish. Falling back to dt = %g.', dt_max)
    return float(dt_max)


def accuracy_dt(grid: ComputationalGrid, cfl: float, exponent: float) -> float:
    """Time step :math:`C(\\min\\Delta\\xi)^e` for accuracy tests."""
    smallest = min(grid.spacing[axis] for axis in grid.axes)
    return cfl * smallest ** exponent


def ssp_rk3_step(state: SimulationState, operator: Operator, dt: float,
                 xdot: Optional[ndarray] = None) -> SimulationState:
    """Advance the coupled system by one SSP-RK3 step.

    Parameters
    ----------
    state: SimulationState
        The state at the beginning of the step.
    operator: callable
        Maps ``(calU, J, coords, t)`` to the time derivatives of ``calU``
        and ``J`` at a stage.
    dt: float
        The time step.
    xdot: ndarray, optional
        Mesh velocity held fixed over all three stages. Defaults to zero.

    Returns
    -------
    SimulationState
        The state at ``t + dt``.

    Raises
    ------
    PositivityError
        If a depth is not positive at any stage.

    Notes
    -----
    The stages are convex combinations of forward Euler steps with weights
    3/4 and 1/4 for the second and 1/3 and 2/3 for the third stage. The mesh
    moves to :math:`x + \\Delta t\\dot{x}`, :math:`x + \\frac{1}{2}\\Delta
    t\\dot{x}`, and finally :math:`x + \\Delta t\\dot{x}`.

    """
    if not dt > 0.0:
        raise ValueError(f'Time step must be positive, not {dt}!')
    coords, t = state.coords, state.t
    calU, J = state.calU, state.jacobian
    velocity = zeros(coords.x.shape) if xdot is None else xdot

    dU, dJ = operator(calU, J, coords, t)
    calU1, J1 = calU + dt * dU, J + dt * dJ
    check_positivity(calU1, J1, t + dt)
    coords1 = coords.moved(dt * velocity)

    dU, dJ = operator(calU1, J1, coords1, t + dt)
    calU2 = 0.75 * calU + 0.25 * (calU1 + dt * dU)
    J2 = 0.75 * J + 0.25 * (J1 + dt * dJ)
    check_positivity(calU2, J2, t + 0.5 * dt)
    coords2 = coords.moved(0.5 * dt * velocity)

    dU, dJ = operator(calU2, J2, coords2, t + 0.5 * dt)
    calU3 = calU / 3.0 + 2.0 / 3.0 * (calU2 + dt * dU)
    J3 = J / 3.0 + 2.0 / 3.0 * (J2 + dt * dJ)
    check_positivity(calU3, J3, t + dt)
    return SimulationState(calU3, J3, coords.moved(dt * velocity),
                           t + dt, xdot)


class Solver:
    """Time loop of a semi-discrete scheme on a static or moving mesh.

    Parameters
    ----------
    scheme: BaseScheme
        The energy-conservative or energy-stable scheme.
    order: SchemeOrder
        Order of fluxes and metrics.
    adaptor: MeshAdaptor, optional
        Mesh adaptation. The mesh stays static if not given.
    source: callable, optional
        Extra source term ``S(coords, t)`` of shape ``(4, N1, N2)``. Its
        Jacobian-weighted value is added to the right-hand side.
    cfl: float, optional
        The CFL number. Defaults to 0.4.
    dt_max: float, optional
        Fallback time step when all speeds vanish.
    dt_exponent: float, optional
        If given, the time step is further limited to
        :math:`C(\\min\\Delta\\xi)^e` so that spatial errors dominate.

    """
    def __init__(self, scheme: BaseScheme, order: SchemeOrder,
                 adaptor: Optional[MeshAdaptor] = None,
                 source: Optional[Source] = None,
                 cfl: float = DEFAULT_CFL,
                 dt_max: Optional[float] = None,
                 dt_exponent: Optional[float] = None) -> None:
        self.__scheme = scheme
        self.__order = order
        self.__adaptor = adaptor
        self.__source = source
        self.__cfl = float(cfl)
        self.__dt_max = dt_max
        self.__exponent = dt_exponent

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        scheme = f'Scheme:   {self.__scheme.__class__.__name__}\n'
        order = f'Order:    {self.__order.accuracy}\n'
        mesh = f'Moving:   {self.__adaptor is not None}\n'
        cfl = f'CFL:      {self.__cfl}'
        return header + divider + scheme + order + mesh + cfl

    @property
    def scheme(self) -> BaseScheme:
        return self.__scheme

    @property
    def order(self) -> SchemeOrder:
        return self.__order

    @property
    def moving(self) -> bool:
        return self.__adaptor is not None

    def time_step(self, state: SimulationState) -> float:
        """Time step allowed by the CFL and accuracy rules."""
        metrics = spatial_metrics(state.coords, self.__order)
        metrics = metrics.moving(state.xdot)
        dt = cfl_dt(state, metrics, self.__scheme.params,
                    self.__cfl, self.__dt_max)
        if self.__exponent is not None:
            dt = min(dt, accuracy_dt(state.grid, self.__cfl, self.__exponent))
        return dt

    def operator(self, xdot: Optional[ndarray]) -> Operator:
        """Stage right-hand side for a fixed mesh velocity."""
        cache = {}

        def evaluate(calU, J, coords, t):
            if xdot is None:
                if 'metrics' not in cache:
                    cache['metrics'] = spatial_metrics(coords, self.__order)
                metrics = cache['metrics']
            else:
                metrics = spatial_metrics(coords, self.__order).moving(xdot)
            rhs = self.__scheme.rhs(calU / J, metrics)
            dU = rhs.dU
            if self.__source is not None:
                dU = dU + J * self.__source(coords, t)
            return dU, rhs.dJ

        return evaluate

    def step(self, state: SimulationState, dt: float,
             nominal: Optional[float] = None) -> SimulationState:
        """Adapt the mesh and advance by one time step of length `dt`.

        The mesh velocity is the limited displacement divided by the larger
        of `dt` and `nominal`. A step cut short to land on an output time
        thus moves the mesh only part of the way, at the velocity of a
        regular step.

        """
        xdot = None
        if self.__adaptor is not None:
            move = self.__adaptor.adapt(state.states, state.coords)
            move = move.timed(dt if nominal is None else max(dt, nominal))
            xdot = move.xdot
        new = ssp_rk3_step(state, self.operator(xdot), dt, xdot)
        logger.debug('t = %.6g, dt = %.4g, min h = %.4g, min J = %.4g.',
                     new.t, dt, new.states[0].min(), new.jacobian.min())
        return new

    def advance(self, state: SimulationState, end_time: float,
                outputs: Sequence[float] = (),
                observer: Optional[Observer] = None,
                progress: bool = False) -> SimulationState:
        """Integrate up to `end_time`, landing exactly on output times.

        Parameters
        ----------
        state: SimulationState
            Initial state.
        end_time: float
            Final time.
        outputs: sequence of float, optional
            Times at which the observer is told to write output.
        observer: callable, optional
            Called as ``observer(state, is_output)`` for the initial state
            and after every step.
        progress: bool, optional
            Show a progress bar over simulated time. Defaults to False.

        Returns
        -------
        SimulationState
            The state at `end_time`.

        """
        if end_time < state.t:
            msg = f'End time {end_time} lies before current time {state.t}!'
            raise ValueError(msg)
        targets = sorted({float(t) for t in outputs
                          if state.t < t <= end_time} | {float(end_time)})
        if observer is not None:
            observer(state, state.t in [float(t) for t in outputs])
        with tqdm(total=end_time - state.t, disable=not progress,
                  unit='t', desc='Simulating') as bar:
            for target in targets:
                while state.t < target:
                    nominal = self.time_step(state)
                    landing = nominal >= target - state.t
                    dt = target - state.t if landing else nominal
                    previous = state.t
                    state = self.step(state, dt, nominal)
                    if landing:
                        state = state.at_time(target)
                    bar.update(state.t - previous)
                    if observer is not None:
                        observer(state, landing and target in outputs)
                logger.info('Reached t = %.6g.', state.t)
        return state
