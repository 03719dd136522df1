"""Discrete mesh metrics and the geometric conservation laws.

The spatial metrics are built from central differences of the node
coordinates with the same coefficients as the high-order fluxes, which makes
the discrete surface conservation law hold to rounding error. Temporal
metrics follow from the mesh velocity, and the Jacobian is advanced in time
with the discrete volume conservation law by the integrator.

"""
from typing import Optional, Tuple
from numpy import ndarray, zeros, stack, argmin, unravel_index, any as any_

from .boundary import HALO, apply_boundary, extend_coordinates
from .exceptions import HaloError
from .grid import ComputationalGrid, MeshCoordinates
from .stencil import (interior, interface_combination, difference,
                      interior_count)

ALPHA = {1: (1.0,),
         2: (4.0 / 3.0, -1.0 / 6.0),
         3: (3.0 / 2.0, -3.0 / 10.0, 1.0 / 30.0)}


def alpha_coefficients(p: int) -> Tuple[float, ...]:
    """Coefficients of the 2p-th order combination of two-point fluxes.

    Parameters
    ----------
    p: int
        Half the formal order of accuracy, between 1 and 3.

    Returns
    -------
    tuple of float
        The coefficients for stencil offsets ``m = 1, ..., p``.

    Raises
    ------
    ValueError
        If `p` is outside the supported range.

    """
    try:
        return ALPHA[int(p)]
    except KeyError:
        raise ValueError(f'Order p must be 1, 2, or 3, not {p}!') from None


class SchemeOrder:
    """Half-order `p` of the scheme with its combination coefficients.

    Parameters
    ----------
    p: int, optional
        Half the formal order of accuracy, 1, 2, or 3. Defaults to 3.

    """
    def __init__(self, p: int = 3) -> None:
        self.__alpha = alpha_coefficients(p)
        self.__p = int(p)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(p={self.__p})'

    def __eq__(self, other) -> bool:
        if not isinstance(other, SchemeOrder):
            return NotImplemented
        return self.__p == other.p

    def __hash__(self) -> int:
        return hash(self.__p)

    @property
    def p(self) -> int:
        return self.__p

    @property
    def alpha(self) -> Tuple[float, ...]:
        return self.__alpha

    @property
    def accuracy(self) -> int:
        """Formal order of accuracy of the energy-conservative scheme."""
        return 2 * self.__p


class MeshMetrics:
    """Jacobian, spatial, and temporal metrics of a mesh.

    The spatial and temporal metrics are stored with a halo of width
    :data:`~swemesh.boundary.HALO` on both grid axes, because the interface
    fluxes of boundary-adjacent nodes need them. The Jacobian is stored for
    the interior nodes only.

    Parameters
    ----------
    grid: ComputationalGrid
        The computational grid.
    spatial: ndarray
        Padded metrics :math:`J\\partial\\xi_l/\\partial x_k`, indexed
        ``[l, k, i, j]``.
    temporal: ndarray
        Padded metrics :math:`J\\partial\\xi_l/\\partial t`, indexed
        ``[l, i, j]``.
    order: SchemeOrder
        The order the metrics were computed with.

    """
    def __init__(self, grid: ComputationalGrid,
                 spatial: ndarray,
                 temporal: ndarray,
                 order: SchemeOrder) -> None:
        self.__grid = grid
        self.__spatial = spatial
        self.__temporal = temporal
        self.__order = order
        m = interior(spatial, HALO)
        self.__jacobian = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        shape = f'Shape:        {self.__grid.shape}\n'
        order = f'Order:        {self.__order.accuracy}\n'
        jacobian = f'Min Jacobian: {self.__jacobian.min()}'
        return header + divider + shape + order + jacobian

    @property
    def grid(self) -> ComputationalGrid:
        return self.__grid

    @property
    def order(self) -> SchemeOrder:
        return self.__order

    @property
    def spatial(self) -> ndarray:
        """Padded spatial metrics indexed ``[l, k, i, j]``."""
        return self.__spatial

    @property
    def temporal(self) -> ndarray:
        """Padded temporal metrics indexed ``[l, i, j]``."""
        return self.__temporal

    @property
    def jacobian(self) -> ndarray:
        """Jacobian determinant recomputed from the spatial metrics."""
        return self.__jacobian

    @property
    def halo(self) -> int:
        return HALO

    def triple(self, axis: int) -> ndarray:
        """Padded ``(mt, m1, m2)`` of the given computational direction."""
        return stack([self.__temporal[axis],
                      self.__spatial[axis, 0],
                      self.__spatial[axis, 1]])

    def moving(self, xdot: Optional[ndarray]) -> 'MeshMetrics':
        """Metrics with temporal terms of the given mesh velocity."""
        if xdot is None:
            temporal = zeros(self.__temporal.shape)
        else:
            padded = apply_boundary(xdot, self.__grid, HALO)
            temporal = temporal_metrics(self.__spatial, padded)
        return MeshMetrics(self.__grid, self.__spatial, temporal, self.__order)

    def first_non_positive(self) -> Optional[Tuple[Tuple[int, ...], float]]:
        """Index and value of the smallest Jacobian if it is not positive."""
        if any_(~(self.__jacobian > 0.0)):
            flat = argmin(self.__jacobian)
            node = tuple(int(i) for i in
                         unravel_index(flat, self.__jacobian.shape))
            return node, float(self.__jacobian[node])
        return None


def central_difference(padded: ndarray, axis: int, alpha: Tuple[float, ...],
                       spacing: float) -> ndarray:
    """High-order central difference along `axis` of a padded field.

    The result loses ``p = len(alpha)`` entries on each side of *both* grid
    axes, so that a field padded by ``w`` yields a field padded by ``w - p``.

    """
    p = len(alpha)
    n1, n2 = padded.shape[-2] - 2 * p, padded.shape[-1] - 2 * p
    result = zeros(padded.shape[:-2] + (n1, n2))
    for m, coefficient in enumerate(alpha, start=1):
        if axis == 0:
            plus = padded[..., p + m:p + m + n1, p:p + n2]
            minus = padded[..., p - m:p - m + n1, p:p + n2]
        else:
            plus = padded[..., p:p + n1, p + m:p + m + n2]
            minus = padded[..., p:p + n1, p - m:p - m + n2]
        result += coefficient * (plus - minus)
    return result / (2.0 * spacing)


def spatial_metrics(coords: MeshCoordinates,
                    order: SchemeOrder) -> MeshMetrics:
    """Discrete spatial metrics of a mesh, with zero temporal metrics.

    The coordinates are first extended into a halo (see
    :func:`~swemesh.boundary.extend_coordinates`), then differenced with the
    2p-th order central stencil.

    Parameters
    ----------
    coords: MeshCoordinates
        Physical node coordinates.
    order: SchemeOrder
        The order of the scheme the metrics are used with.

    Returns
    -------
    MeshMetrics
        Metrics padded by a halo of width 3.

    Raises
    ------
    ValueError
        If an active axis has fewer than ``2p + 1`` nodes.

    """
    grid = coords.grid
    for axis in grid.axes:
        if grid.shape[axis] < 2 * order.p + 1:
            msg = (f'Order {order.accuracy} needs at least {2 * order.p + 1}'
                   f' nodes per axis, not {grid.shape[axis]}!')
            raise ValueError(msg)
    x = extend_coordinates(coords.x, grid, HALO + order.p)
    d1 = central_difference(x, 0, order.alpha, grid.spacing[0])
    d2 = central_difference(x, 1, order.alpha, grid.spacing[1])
    spatial = stack([stack([d2[1], -d2[0]]),
                     stack([-d1[1], d1[0]])])
    temporal = zeros((2,) + spatial.shape[2:])
    return MeshMetrics(grid, spatial, temporal, order)


def temporal_metrics(spatial: ndarray, xdot: ndarray) -> ndarray:
    """Temporal metrics :math:`-\\dot{x}_1 m_{l1} - \\dot{x}_2 m_{l2}`.

    Parameters
    ----------
    spatial: ndarray
        Spatial metrics indexed ``[l, k, ...]``.
    xdot: ndarray
        Mesh velocities indexed ``[k, ...]`` on the same nodes.

    Returns
    -------
    ndarray
        Temporal metrics indexed ``[l, ...]``.

    Raises
    ------
    ValueError
        If the shapes do not match.

    """
    if spatial.shape[2:] != xdot.shape[1:] or xdot.shape[0] != 2:
        msg = (f'Mesh velocity of shape {xdot.shape} does not fit '
               f'metrics of shape {spatial.shape}!')
        raise ValueError(msg)
    return -(xdot[0] * spatial[:, 0] + xdot[1] * spatial[:, 1])


def jacobian(coords: MeshCoordinates, order: SchemeOrder) -> ndarray:
    """Jacobian of a mesh computed from its discrete spatial metrics."""
    return spatial_metrics(coords, order).jacobian


def _mean_kernel(left: ndarray, right: ndarray) -> ndarray:
    return (left + right) * 0.5


def metric_interface_flux(field: ndarray, order: SchemeOrder, axis: int,
                          halo: int = HALO) -> ndarray:
    """High-order interface value of a padded nodal field.

    Parameters
    ----------
    field: ndarray
        Padded nodal field, e.g. a metric term.
    order: SchemeOrder
        Combination coefficients.
    axis: int
        Axis along which interfaces are formed.
    halo: int, optional
        Halo width of `field`. Defaults to 3.

    Returns
    -------
    ndarray
        Interface values at all ``N + 1`` interfaces of the axis.

    Raises
    ------
    HaloError
        If the halo is narrower than `p`.

    """
    if interior_count(field, axis, halo) < 1:
        raise HaloError(f'Field of shape {field.shape} has no interior!')
    return interface_combination(_mean_kernel, [field], order.alpha,
                                 axis, halo)


def scl_residual(metrics: MeshMetrics,
                 order: Optional[SchemeOrder] = None) -> ndarray:
    """Residual of the discrete surface conservation laws.

    Returns
    -------
    ndarray
        Residuals for ``k = 1, 2``, stacked along the first axis, at all
        interior nodes.

    """
    order = metrics.order if order is None else order
    grid = metrics.grid
    residual = zeros((2,) + grid.shape)
    for k in (0, 1):
        for axis in grid.axes:
            flux = metric_interface_flux(metrics.spatial[axis, k], order, axis)
            residual[k] += difference(flux, axis) / grid.spacing[axis]
    return residual


def vcl_rate(metrics: MeshMetrics, order: Optional[SchemeOrder] = None,
             ) -> ndarray:
    """Time derivative of the Jacobian from the discrete volume law."""
    order = metrics.order if order is None else order
    grid = metrics.grid
    rate = zeros(grid.shape)
    for axis in grid.axes:
        flux = metric_interface_flux(metrics.temporal[axis], order, axis)
        rate -= difference(flux, axis) / grid.spacing[axis]
    return rate
