"""State algebra of the shallow water equations with topography.

The bottom topography ``b`` is carried as a fourth conserved variable, so a
state is the 4-vector ``(h, hv1, hv2, b)``. Everything in this module
broadcasts: a state may be a single node (shape ``(4,)``) or a whole grid
field (shape ``(4, N1, N2)``), and all returned quantities share the trailing
shape of the input.

"""
from typing import NamedTuple, Tuple, Union
from numpy import (ndarray, asarray, stack, zeros_like, ones_like, sqrt,
                   arctan2, cos, sin, any as any_, argmin, unravel_index,
                   float64)

from .exceptions import PositivityError, DegenerateMetricError

POSITIVITY_THRESHOLD = 1e-13
GAMMA_TOLERANCE = 1e-12

Real = Union[float, ndarray]


class PhysicsParams:
    """Physical constants threaded through every flux and energy evaluation.

    Parameters
    ----------
    g: float, optional
        Gravitational acceleration. Must be positive. Defaults to 1.
    gamma: float, optional
        Coefficient of the :math:`\\gamma g b^2` term in the modified energy.
        Must differ from 1/2, where the map between conserved and energy
        variables is not invertible. Defaults to 1.

    Raises
    ------
    ValueError
        If `g` is not positive or `gamma` is (numerically) 1/2.

    """
    def __init__(self, g: float = 1.0, gamma: float = 1.0) -> None:
        self.__g, self.__gamma = self.__validated(g, gamma)

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        g = f'Gravity g: {self.__g}\n'
        gamma = f'Gamma:     {self.__gamma}'
        return header + divider + g + gamma

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhysicsParams):
            return NotImplemented
        return self.__g == other.g and self.__gamma == other.gamma

    def __hash__(self) -> int:
        return hash((self.__g, self.__gamma))

    @property
    def g(self) -> float:
        """Gravitational acceleration."""
        return self.__g

    @property
    def gamma(self) -> float:
        """Energy-modification coefficient."""
        return self.__gamma

    @staticmethod
    def __validated(g: float, gamma: float) -> Tuple[float, float]:
        g, gamma = float(g), float(gamma)
        if not g > 0.0:
            raise ValueError(f'Gravity must be positive, not {g}!')
        if abs(gamma - 0.5) < GAMMA_TOLERANCE:
            msg = (f'Gamma = {gamma} is too close to 1/2, where the energy '
                   'variables no longer determine the state!')
            raise ValueError(msg)
        return g, gamma


class ConservedState:
    """Conserved variables ``(h, hv1, hv2, b)`` of one node or a whole field.

    Parameters
    ----------
    h: float or ndarray
        Water depth. Must be positive everywhere.
    hv1: float or ndarray
        Discharge in the first coordinate direction.
    hv2: float or ndarray
        Discharge in the second coordinate direction.
    b: float or ndarray
        Bottom topography.

    Raises
    ------
    PositivityError
        If any depth is below the positivity threshold.

    """
    def __init__(self, h: Real, hv1: Real, hv2: Real, b: Real) -> None:
        self.__values = validated(stack([asarray(h, dtype=float64),
                                         asarray(hv1, dtype=float64),
                                         asarray(hv2, dtype=float64),
                                         asarray(b, dtype=float64)]))

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        shape = f'Shape:     {self.__values.shape[1:]}\n'
        depth = f'Min depth: {self.__values[0].min()}'
        return header + divider + shape + depth

    def __array__(self, dtype=None) -> ndarray:
        return self.__values if dtype is None else self.__values.astype(dtype)

    @classmethod
    def from_primitive(cls, h: Real, v1: Real, v2: Real,
                       b: Real) -> 'ConservedState':
        """Build a state from depth, velocities and topography."""
        h = asarray(h, dtype=float64)
        return cls(h, h * v1, h * v2, b)

    @property
    def values(self) -> ndarray:
        """The stacked conserved variables with leading dimension 4."""
        return self.__values

    @property
    def h(self) -> ndarray:
        return self.__values[0]

    @property
    def hv1(self) -> ndarray:
        return self.__values[1]

    @property
    def hv2(self) -> ndarray:
        return self.__values[2]

    @property
    def b(self) -> ndarray:
        return self.__values[3]

    @property
    def v1(self) -> ndarray:
        return self.__values[1] / self.__values[0]

    @property
    def v2(self) -> ndarray:
        return self.__values[2] / self.__values[0]

    def primitive(self) -> ndarray:
        """Depth, velocities, and topography stacked along the first axis."""
        return primitive(self.__values)


class EnergyQuantities(NamedTuple):
    """Modified energy, its fluxes, and the potentials of a state."""
    eta: ndarray
    q1: ndarray
    q2: ndarray
    phi: ndarray
    psi1: ndarray
    psi2: ndarray


StateT = Union[ConservedState, ndarray]


def validated(U: StateT) -> ndarray:
    """Return the state as array, raising if a depth is not positive."""
    U = asarray(U, dtype=float64)
    if U.shape[:1] != (4,):
        raise ValueError(f'States need a leading dimension 4, not {U.shape}!')
    h = U[0]
    if any_(~(h >= POSITIVITY_THRESHOLD)):
        flat = argmin(h) if h.ndim else 0
        node = tuple(int(i) for i in unravel_index(flat, h.shape))
        value = float(h[node])
        msg = f'Water depth {value} at node {node} is not positive!'
        raise PositivityError(msg, node=node, value=value)
    return U


def primitive(U: StateT) -> ndarray:
    """Convert conserved to primitive variables ``(h, v1, v2, b)``."""
    U = validated(U)
    return stack([U[0], U[1] / U[0], U[2] / U[0], U[3]])


def physical_flux(U: StateT, params: PhysicsParams, axis: int) -> ndarray:
    """Physical flux of the reformulated system in one coordinate direction.

    Parameters
    ----------
    U: ConservedState or ndarray
        State(s) with leading dimension 4.
    params: PhysicsParams
        Physical constants.
    axis: int
        Coordinate direction, 0 or 1.

    Returns
    -------
    ndarray
        The flux with the same shape as `U`. Its 4th component is zero.

    """
    h, v1, v2, _ = primitive(U)
    pressure = 0.5 * params.g * h * h
    if axis == 0:
        return stack([h * v1, h * v1 * v1 + pressure,
                      h * v1 * v2, zeros_like(h)])
    if axis == 1:
        return stack([h * v2, h * v1 * v2,
                      h * v2 * v2 + pressure, zeros_like(h)])
    raise ValueError(f'Axis must be 0 or 1, not {axis}!')


def energy_pair(U: StateT, params: PhysicsParams) -> EnergyQuantities:
    """Modified energy, energy fluxes, and the potentials phi and psi."""
    h, v1, v2, b = primitive(U)
    g, gamma = params.g, params.gamma
    kinetic = v1 * v1 + v2 * v2
    phi = 0.5 * g * h * h + g * h * b + gamma * g * b * b
    eta = 0.5 * h * kinetic + phi
    flux_factor = 0.5 * h * kinetic + g * h * h + g * h * b
    psi_factor = 0.5 * g * h * h + g * h * b
    return EnergyQuantities(eta, flux_factor * v1, flux_factor * v2,
                            phi, psi_factor * v1, psi_factor * v2)


def energy_variables(U: StateT, params: PhysicsParams) -> ndarray:
    """Gradient of the modified energy with respect to the conserved state."""
    h, v1, v2, b = primitive(U)
    g = params.g
    return stack([g * (h + b) - 0.5 * (v1 * v1 + v2 * v2), v1, v2,
                  g * h + 2.0 * params.gamma * g * b])


def original_entropy_variables(U: StateT, params: PhysicsParams) -> ndarray:
    """Entropy variables of the original three-equation system."""
    return energy_variables(U, params)[:3]


def energy_hessian(U: StateT, params: PhysicsParams) -> ndarray:
    """Hessian of the modified energy, shape ``(4, 4) + U.shape[1:]``.

    It is symmetric, and positive definite if and only if gamma > 1/2.

    """
    h, v1, v2, _ = primitive(U)
    g = params.g
    one, zero = ones_like(h), zeros_like(h)
    gh = g * h
    rows = [[gh + v1 * v1 + v2 * v2, -v1, -v2, gh],
            [-v1, one, zero, zero],
            [-v2, zero, one, zero],
            [gh, zero, zero, 2.0 * params.gamma * gh]]
    return stack([stack(row) for row in rows]) / h


def eigen_scaling(U: StateT, params: PhysicsParams) -> Tuple[ndarray, ndarray]:
    """Scaled eigenvectors and eigenvalues of the first-direction flux.

    The eigenvectors are scaled such that :math:`RR^T` equals the Jacobian
    of the first three conserved variables with respect to the first three
    entropy variables.

    Returns
    -------
    tuple of ndarray
        The matrix `R` with shape ``(3, 3) + U.shape[1:]`` and the
        eigenvalues ``(v1 + c, v1 - c, v1)`` stacked along the first axis.

    """
    h, v1, v2, _ = primitive(U)
    c = sqrt(params.g * h)
    scale = 1.0 / sqrt(2.0 * params.g)
    root = sqrt(h)
    zero = zeros_like(h)
    R = stack([stack([scale + zero, scale + zero, zero]),
               stack([(v1 + c) * scale, (v1 - c) * scale, zero]),
               stack([v2 * scale, v2 * scale, root])])
    return R, stack([v1 + c, v1 - c, v1])


def rotation_matrix(metric_x1: Real, metric_x2: Real) -> ndarray:
    """Rotation aligning the first velocity component with a metric normal.

    Parameters
    ----------
    metric_x1: float or ndarray
        First component of the metric vector.
    metric_x2: float or ndarray
        Second component of the metric vector.

    Returns
    -------
    ndarray
        Orthogonal matrices with shape ``(3, 3) + shape of the input``.

    Raises
    ------
    DegenerateMetricError
        If both components vanish somewhere.

    """
    m1 = asarray(metric_x1, dtype=float64)
    m2 = asarray(metric_x2, dtype=float64)
    if any_((m1 == 0.0) & (m2 == 0.0)):
        raise DegenerateMetricError('Metric vector (0, 0) has no direction!')
    angle = arctan2(m2, m1)
    c, s = cos(angle), sin(angle)
    one, zero = ones_like(c), zeros_like(c)
    return stack([stack([one, zero, zero]),
                  stack([zero, c, s]),
                  stack([zero, -s, c])])
