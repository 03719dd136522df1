"""Adaptive redistribution of the physical mesh.

The mesh follows the Winslow variable-diffusion equations with the
isotropic choice :math:`G = \\omega I`. Every time step, a monitor function
is evaluated from the current solution, smoothed by a low-pass filter, and a
fixed number of Jacobi sweeps of the discretized mesh equations produce a
candidate mesh. The displacement towards that candidate is limited so that
no node crosses half the gap to its neighbour.

"""
import logging
from typing import NamedTuple, Optional, Sequence
from numpy import (ndarray, asarray, zeros, ones, sqrt, pad, where, inf,
                   float64, abs as abs_, minimum, any as any_)

from .boundary import OUTFLOW, apply_boundary, extend_coordinates
from .exceptions import MeshTanglingError
from .grid import ComputationalGrid, MeshCoordinates
from .metrics import SchemeOrder, spatial_metrics
from .state import StateT, validated

logger = logging.getLogger(__name__)

SELECTORS = ('h', 'b', 'h+b', 'hv1', 'hv2', 'v1', 'v2', 'speed')


class MonitorParams:
    """Settings of the monitor function and the mesh iteration.

    Parameters
    ----------
    sigmas: sequence of str, optional
        Physical variables the mesh should resolve. Any of "h", "b",
        "h+b", "hv1", "hv2", "v1", "v2", and "speed". Defaults to "h+b".
    thetas: sequence of float, optional
        Positive weights of the normalized gradients, one per variable.
        Defaults to 100.
    laplacians: sequence of float, optional
        Non-negative weights of the normalized Laplacians, one per variable.
        Defaults to zero for all.
    power: float, optional
        Exponent of the normalized gradients and Laplacians. Defaults to 2.
    smoothing_passes: int, optional
        Number of low-pass filter passes. Defaults to 5.
    jacobi_iterations: int, optional
        Number of Jacobi sweeps per time step. Defaults to 10.

    Raises
    ------
    ValueError
        If selectors are unknown, lengths mismatch, or values are out of range.

    """
    def __init__(self, sigmas: Sequence[str] = ('h+b',),
                 thetas: Sequence[float] = (100.0,),
                 laplacians: Optional[Sequence[float]] = None,
                 power: float = 2.0,
                 smoothing_passes: int = 5,
                 jacobi_iterations: int = 10) -> None:
        self.__sigmas = tuple(str(sigma) for sigma in sigmas)
        self.__thetas = tuple(float(theta) for theta in thetas)
        if laplacians is None:
            laplacians = (0.0,) * len(self.__sigmas)
        self.__laplacians = tuple(float(lam) for lam in laplacians)
        self.__power = float(power)
        self.__passes = int(smoothing_passes)
        self.__iterations = int(jacobi_iterations)
        self.__validate()

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        sigmas = f'Sigmas:     {self.__sigmas}\n'
        thetas = f'Thetas:     {self.__thetas}\n'
        laplacians = f'Laplacians: {self.__laplacians}\n'
        power = f'Power:      {self.__power}\n'
        passes = f'Smoothing:  {self.__passes}\n'
        iterations = f'Jacobi:     {self.__iterations}'
        return (header + divider + sigmas + thetas + laplacians
                + power + passes + iterations)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonitorParams):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    @property
    def sigmas(self) -> tuple:
        return self.__sigmas

    @property
    def thetas(self) -> tuple:
        return self.__thetas

    @property
    def laplacians(self) -> tuple:
        return self.__laplacians

    @property
    def power(self) -> float:
        return self.__power

    @property
    def smoothing_passes(self) -> int:
        return self.__passes

    @property
    def jacobi_iterations(self) -> int:
        return self.__iterations

    def as_dict(self) -> dict:
        """Plain representation for configuration files and digests."""
        return {'sigmas': list(self.__sigmas),
                'thetas': list(self.__thetas),
                'laplacians': list(self.__laplacians),
                'power': self.__power,
                'smoothing_passes': self.__passes,
                'jacobi_iterations': self.__iterations}

    def __validate(self) -> None:
        for sigma in self.__sigmas:
            if sigma not in SELECTORS:
                raise ValueError(f'Unknown monitor variable "{sigma}"! '
                                 f'Use one of {SELECTORS}.')
        count = len(self.__sigmas)
        if count == 0:
            raise ValueError('The monitor needs at least one variable!')
        if len(self.__thetas) != count or len(self.__laplacians) != count:
            msg = (f'Need one theta and one Laplacian weight per variable,'
                   f' got {len(self.__thetas)} and {len(self.__laplacians)}'
                   f' for {count} variables!')
            raise ValueError(msg)
        if any(theta <= 0.0 for theta in self.__thetas):
            raise ValueError(f'Thetas must be positive, not {self.__thetas}!')
        if any(lam < 0.0 for lam in self.__laplacians):
            msg = (f'Laplacian weights must not be negative: '
                   f'{self.__laplacians}')
            raise ValueError(msg)
        if not self.__power > 0.0:
            raise ValueError(f'Power must be positive, not {self.__power}!')
        if self.__passes < 0:
            raise ValueError(f'Passes must not be negative: {self.__passes}!')
        if self.__iterations < 1:
            msg = f'Need at least one Jacobi sweep, not {self.__iterations}!'
            raise ValueError(msg)


class MeshMove(NamedTuple):
    """Limited move from the current mesh towards the adapted one.

    Parameters
    ----------
    old: MeshCoordinates
        The mesh at the beginning of the time step.
    delta: ndarray
        Displacement towards the candidate mesh, shape ``(2, N1, N2)``.
    dtau: float
        Limiter in ``(0, 1]`` applied to the displacement.
    xdot: ndarray, optional
        Mesh velocity, once a time step is known.

    """
    old: MeshCoordinates
    delta: ndarray
    dtau: float
    xdot: Optional[ndarray] = None

    @property
    def displacement(self) -> ndarray:
        """The limited displacement actually applied."""
        return self.dtau * self.delta

    @property
    def new(self) -> MeshCoordinates:
        """The mesh at the end of the time step."""
        return self.old.moved(self.displacement)

    def timed(self, dt: float) -> 'MeshMove':
        """The same move with the mesh velocity for a time step `dt`."""
        return self._replace(xdot=mesh_velocity(self, dt))


def select(states: StateT, sigma: str) -> ndarray:
    """Physical variable the monitor function is built from."""
    U = validated(states)
    h, hv1, hv2, b = U
    fields = {'h': lambda: h,
              'b': lambda: b,
              'h+b': lambda: h + b,
              'hv1': lambda: hv1,
              'hv2': lambda: hv2,
              'v1': lambda: hv1 / h,
              'v2': lambda: hv2 / h,
              'speed': lambda: sqrt(hv1 * hv1 + hv2 * hv2) / h}
    try:
        return fields[sigma]()
    except KeyError:
        raise ValueError(f'Unknown monitor variable "{sigma}"! '
                         f'Use one of {SELECTORS}.') from None


def _gradient_and_laplacian(field: ndarray,
                            grid: ComputationalGrid) -> tuple:
    padded = apply_boundary(field, grid, 1)
    center = padded[1:-1, 1:-1]
    gradient = zeros(field.shape)
    laplacian = zeros(field.shape)
    for axis in grid.axes:
        step = grid.spacing[axis]
        if axis == 0:
            plus, minus = padded[2:, 1:-1], padded[:-2, 1:-1]
        else:
            plus, minus = padded[1:-1, 2:], padded[1:-1, :-2]
        gradient += ((plus - minus) / (2.0 * step)) ** 2
        laplacian += (plus - 2.0 * center + minus) / (step * step)
    return sqrt(gradient), abs_(laplacian)


def _normalized(field: ndarray) -> ndarray:
    peak = field.max()
    if peak > 0.0:
        return field / peak
    return zeros(field.shape)


def monitor(states: StateT, grid: ComputationalGrid,
            params: MonitorParams) -> ndarray:
    """Monitor function of the current solution.

    Parameters
    ----------
    states: ConservedState or ndarray
        Conserved variables at the interior nodes, shape ``(4, N1, N2)``.
    grid: ComputationalGrid
        The computational grid.
    params: MonitorParams
        Variables and weights of the monitor.

    Returns
    -------
    ndarray
        The field

        .. math:: \\omega = \\sqrt{1 + \\sum_k\\theta_k\\left(
                  \\frac{|\\nabla_\\xi\\sigma_k|}{\\max|\\nabla_\\xi\\sigma_k|}
                  \\right)^{q} + \\lambda_k\\left(
                  \\frac{|\\Delta_\\xi\\sigma_k|}{\\max|\\Delta_\\xi\\sigma_k|}
                  \\right)^{q}}

        with second-order central differences in computational space. A
        variable without variation contributes nothing, so :math:`\\omega
        \\geq 1` everywhere. With :math:`q = 2` the monitor is a smooth
        function of the solution. With :math:`q = 1` it has kinks wherever a
        derivative changes sign, and so has the adapted mesh.

    """
    total = ones(grid.shape)
    terms = zip(params.sigmas, params.thetas, params.laplacians)
    for sigma, theta, lam in terms:
        gradient, laplacian = _gradient_and_laplacian(select(states, sigma),
                                                      grid)
        total += theta * _normalized(gradient) ** params.power
        if lam > 0.0:
            total += lam * _normalized(laplacian) ** params.power
    return sqrt(total)


def smooth_monitor(omega: ndarray, passes: int,
                   grid: Optional[ComputationalGrid] = None) -> ndarray:
    """Apply the 9-point low-pass filter a number of times.

    The weights are 1/4 at the centre, 1/8 at the edge neighbours, and 1/16
    at the corners. Halos are filled according to the boundary conditions
    of `grid`, or by repeating the edge values if no grid is given.

    """
    if passes < 0:
        raise ValueError(f'Passes must not be negative, not {passes}!')
    omega = asarray(omega, dtype=float64)
    for _ in range(passes):
        if grid is None:
            padded = pad(omega, 1, mode='edge')
        else:
            padded = apply_boundary(omega, grid, 1)
        rows = (0.25 * padded[:-2] + 0.5 * padded[1:-1] + 0.25 * padded[2:])
        omega = (0.25 * rows[:, :-2] + 0.5 * rows[:, 1:-1]
                 + 0.25 * rows[:, 2:])
    return omega


def _boundary_mask(grid: ComputationalGrid, axis: int) -> ndarray:
    mask = zeros(grid.shape, dtype=bool)
    if grid.shape[axis] > 1 and grid.boundaries[axis] == OUTFLOW:
        if axis == 0:
            mask[0, :] = mask[-1, :] = True
        else:
            mask[:, 0] = mask[:, -1] = True
    return mask


def jacobi_sweep(coords: MeshCoordinates, omega: ndarray) -> MeshCoordinates:
    """One Jacobi sweep of the discretized mesh equations.

    Every node moves to the weighted average of its neighbours, with
    weights :math:`(\\omega_c + \\omega_n)/\\Delta\\xi^2` per neighbour.
    All new positions are computed from the old ones.

    On outflow boundaries, the coordinate normal to the boundary is fixed
    and the tangential one is averaged over the neighbours along the
    boundary only. Corners do not move. Periodic neighbours are shifted by
    the domain period.

    """
    grid = coords.grid
    omega = asarray(omega, dtype=float64)
    if omega.shape != grid.shape:
        msg = f'Monitor of shape {omega.shape} does not fit grid {grid.shape}!'
        raise ValueError(msg)
    x = extend_coordinates(coords.x, grid, 1)
    w = apply_boundary(omega, grid, 1)
    center = w[1:-1, 1:-1]
    masks = {axis: _boundary_mask(grid, axis) for axis in grid.axes}
    new = coords.x.copy()
    for component in grid.axes:
        numerator = zeros(grid.shape)
        denominator = zeros(grid.shape)
        for axis in grid.axes:
            if axis == 0:
                w_plus, w_minus = w[2:, 1:-1], w[:-2, 1:-1]
                x_plus = x[component, 2:, 1:-1]
                x_minus = x[component, :-2, 1:-1]
            else:
                w_plus, w_minus = w[1:-1, 2:], w[1:-1, :-2]
                x_plus = x[component, 1:-1, 2:]
                x_minus = x[component, 1:-1, :-2]
            step = grid.spacing[axis] ** 2
            weight_plus = where(masks[axis], 0.0, (center + w_plus) / step)
            weight_minus = where(masks[axis], 0.0, (center + w_minus) / step)
            numerator += weight_plus * x_plus + weight_minus * x_minus
            denominator += weight_plus + weight_minus
        fixed = masks[component] | (denominator == 0.0)
        safe = where(fixed, 1.0, denominator)
        new[component] = where(fixed, coords.x[component], numerator / safe)
    return MeshCoordinates(grid, new)


def limit_and_move(old: MeshCoordinates, candidate: MeshCoordinates,
                   order: Optional[SchemeOrder] = None) -> MeshMove:
    """Limit the move towards a candidate mesh to keep nodes ordered.

    Parameters
    ----------
    old: MeshCoordinates
        The mesh at the beginning of the time step.
    candidate: MeshCoordinates
        The mesh after the Jacobi sweeps.
    order: SchemeOrder, optional
        Order of the metrics the Jacobian of the moved mesh is checked
        with. Defaults to p = 1.

    Returns
    -------
    MeshMove
        The displacement and the limiter :math:`\\Delta_\\tau\\in(0, 1]`.

    Raises
    ------
    ValueError
        If the two meshes live on different grids.
    MeshTanglingError
        If the moved mesh has a non-positive Jacobian somewhere.

    Notes
    -----
    A node moving by :math:`\\delta` along an axis may cover at most half the
    gap to its neighbour in that direction, so :math:`\\Delta_\\tau` is the
    smallest of :math:`\\pm\\frac{1}{2}\\mathrm{gap}/\\delta` over all
    nodes and active axes, capped at 1.

    """
    grid = old.grid
    if candidate.grid != grid:
        raise ValueError('Old and candidate meshes live on different grids!')
    delta = candidate.x - old.x
    x = extend_coordinates(old.x, grid, 1)
    dtau = 1.0
    for axis in grid.axes:
        if axis == 0:
            left = x[0, 1:-1, 1:-1] - x[0, :-2, 1:-1]
            right = x[0, 2:, 1:-1] - x[0, 1:-1, 1:-1]
        else:
            left = x[1, 1:-1, 1:-1] - x[1, 1:-1, :-2]
            right = x[1, 1:-1, 2:] - x[1, 1:-1, 1:-1]
        step = delta[axis]
        safe = where(step == 0.0, 1.0, step)
        bound = where(step < 0.0, -0.5 * left / safe,
                      where(step > 0.0, 0.5 * right / safe, inf))
        dtau = float(minimum(dtau, bound.min()))
    move = MeshMove(old, delta, dtau)
    order = SchemeOrder(1) if order is None else order
    tangled = spatial_metrics(move.new, order).first_non_positive()
    if tangled is not None:
        node, value = tangled
        msg = f'Moved mesh has Jacobian {value} at node {node}!'
        raise MeshTanglingError(msg, node=node, value=value)
    return move


def mesh_velocity(move: MeshMove, dt: float) -> ndarray:
    """Mesh velocity :math:`\\Delta_\\tau\\delta/\\Delta t` of a move."""
    if not dt > 0.0:
        raise ValueError(f'Time step must be positive, not {dt}!')
    return move.displacement / dt


class MeshAdaptor:
    """Produce one limited mesh move per time step from the solution.

    Parameters
    ----------
    params: MonitorParams, optional
        Monitor and iteration settings. Defaults to ``MonitorParams()``.
    order: SchemeOrder, optional
        Order of the scheme, used to check the moved mesh. Defaults to p = 3.

    """
    def __init__(self, params: Optional[MonitorParams] = None,
                 order: Optional[SchemeOrder] = None) -> None:
        self.__params = MonitorParams() if params is None else params
        self.__order = SchemeOrder() if order is None else order

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        order = f'Order:  {self.__order.accuracy}\n'
        return header + divider + order + repr(self.__params)

    @property
    def params(self) -> MonitorParams:
        return self.__params

    @property
    def order(self) -> SchemeOrder:
        return self.__order

    def omega(self, states: StateT, grid: ComputationalGrid) -> ndarray:
        """Smoothed monitor of the given solution."""
        omega = monitor(states, grid, self.__params)
        return smooth_monitor(omega, self.__params.smoothing_passes, grid)

    def adapt(self, states: StateT, coords: MeshCoordinates) -> MeshMove:
        """Limited move towards the mesh adapted to `states`.

        The monitor is frozen during the Jacobi sweeps.

        """
        omega = self.omega(states, coords.grid)
        candidate = coords
        for _ in range(self.__params.jacobi_iterations):
            candidate = jacobi_sweep(candidate, omega)
        move = limit_and_move(coords, candidate, self.__order)
        if any_(move.delta != 0.0):
            logger.debug('Mesh move with dtau = %.4g, max |delta| = %.4g.',
                         move.dtau, abs_(move.delta).max())
        return move
