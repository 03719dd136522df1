"""The uniform computational grid and the physical mesh living on it."""
from typing import Sequence, Tuple
from numpy import ndarray, linspace, meshgrid, stack, asarray, array, float64

from .boundary import PERIODIC, OUTFLOW

BOUNDARIES = (PERIODIC, OUTFLOW)


class ComputationalGrid:
    """Uniform Cartesian grid of node indices and computational coordinates.

    A one-dimensional problem is represented by a grid with a single node
    along the second axis. That axis is *inactive*: no fluxes, metrics, or
    mesh motion are computed along it.

    Parameters
    ----------
    shape: sequence of int
        Number of nodes ``(N1,)`` or ``(N1, N2)``.
    lower: sequence of float
        Lower corner of the domain.
    upper: sequence of float
        Upper corner of the domain.
    boundaries: sequence of str
        Boundary condition per axis, either "periodic" or "outflow".

    Raises
    ------
    ValueError
        If dimensions mismatch, a boundary is unknown, or an extent is empty.

    Notes
    -----
    Along periodic axes, the node spacing is :math:`L/N` and the node at
    the upper end is omitted because it coincides with the first one. Along
    outflow axes, both ends carry a node and the spacing is :math:`L/(N-1)`.

    """
    def __init__(self, shape: Sequence[int],
                 lower: Sequence[float],
                 upper: Sequence[float],
                 boundaries: Sequence[str]) -> None:
        validated = self.__validated(shape, lower, upper, boundaries)
        self.__shape, self.__lower, self.__upper, self.__bcs = validated
        self.__spacing = tuple(self.__step(axis) for axis in (0, 1))

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        shape = f'Shape:      {self.__shape}\n'
        lower = f'Lower:      {self.__lower}\n'
        upper = f'Upper:      {self.__upper}\n'
        bcs = f'Boundaries: {self.__bcs}'
        return header + divider + shape + lower + upper + bcs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComputationalGrid):
            return NotImplemented
        return (self.__shape == other.shape and self.__lower == other.lower
                and self.__upper == other.upper
                and self.__bcs == other.boundaries)

    def __hash__(self) -> int:
        return hash((self.__shape, self.__lower, self.__upper, self.__bcs))

    @property
    def shape(self) -> Tuple[int, int]:
        """Number of nodes per axis."""
        return self.__shape

    @property
    def dimension(self) -> int:
        """Number of active axes."""
        return len(self.axes)

    @property
    def axes(self) -> Tuple[int, ...]:
        """Indices of the active axes."""
        return tuple(a for a in (0, 1) if self.__shape[a] > 1)

    @property
    def lower(self) -> Tuple[float, float]:
        return self.__lower

    @property
    def upper(self) -> Tuple[float, float]:
        return self.__upper

    @property
    def boundaries(self) -> Tuple[str, str]:
        """Boundary condition per axis."""
        return self.__bcs

    @property
    def spacing(self) -> Tuple[float, float]:
        """Computational grid spacing per axis."""
        return self.__spacing

    @property
    def periods(self) -> Tuple[float, float]:
        """Domain extent per axis, used to shift coordinates across seams."""
        return tuple(u - l for l, u in zip(self.__lower, self.__upper))

    @property
    def cell_volume(self) -> float:
        """Product of the spacings along the active axes."""
        volume = 1.0
        for axis in self.axes:
            volume *= self.__spacing[axis]
        return volume

    def nodes(self) -> ndarray:
        """Computational node coordinates, shape ``(2, N1, N2)``."""
        ticks = []
        for axis in (0, 1):
            n = self.__shape[axis]
            lo, step = self.__lower[axis], self.__spacing[axis]
            ticks.append(lo + step * linspace(0.0, n - 1.0, n))
        return stack(meshgrid(*ticks, indexing='ij'))

    def refined(self, factor: int = 2) -> 'ComputationalGrid':
        """The same domain with `factor` times as many cells per axis."""
        axes = self.axes
        shape = []
        for axis in axes:
            n = self.__shape[axis]
            if self.__bcs[axis] == PERIODIC:
                shape.append(n * factor)
            else:
                shape.append((n - 1) * factor + 1)
        return ComputationalGrid(shape,
                                 [self.__lower[a] for a in axes],
                                 [self.__upper[a] for a in axes],
                                 [self.__bcs[a] for a in axes])

    def __step(self, axis: int) -> float:
        n = self.__shape[axis]
        extent = self.__upper[axis] - self.__lower[axis]
        if n == 1:
            return 1.0
        if self.__bcs[axis] == PERIODIC:
            return extent / n
        return extent / (n - 1)

    @staticmethod
    def __validated(shape, lower, upper, boundaries) -> tuple:
        shape = tuple(int(n) for n in shape)
        lower = tuple(float(x) for x in lower)
        upper = tuple(float(x) for x in upper)
        boundaries = tuple(str(bc).lower() for bc in boundaries)
        if not 1 <= len(shape) <= 2:
            raise ValueError(f'Grids are 1D or 2D, not {len(shape)}D!')
        dim = len(shape)
        if len(lower) != dim or len(upper) != dim or len(boundaries) != dim:
            msg = (f'Shape {shape}, lower {lower}, upper {upper}, and '
                   f'boundaries {boundaries} must have the same length!')
            raise ValueError(msg)
        for bc in boundaries:
            if bc not in BOUNDARIES:
                raise ValueError(f'Unknown boundary "{bc}"! Use {BOUNDARIES}.')
        for n, lo, up in zip(shape, lower, upper):
            if n < 2:
                raise ValueError(f'Need at least 2 nodes per axis, not {n}!')
            if not up > lo:
                raise ValueError(f'Upper bound {up} must exceed lower {lo}!')
        if dim == 1:
            shape += (1,)
            lower += (0.0,)
            upper += (1.0,)
            boundaries += (OUTFLOW,)
        return shape, lower, upper, boundaries


class MeshCoordinates:
    """Physical node coordinates on a computational grid.

    Parameters
    ----------
    grid: ComputationalGrid
        The computational grid the coordinates are attached to.
    x: ndarray
        Coordinates with shape ``(2, N1, N2)``.

    Raises
    ------
    ValueError
        If the shape of `x` does not match the grid.

    """
    def __init__(self, grid: ComputationalGrid, x: ndarray) -> None:
        self.__grid = grid
        self.__x = self.__validated(grid, x)

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        shape = f'Shape: {self.__grid.shape}\n'
        x1 = f'x1:    [{self.__x[0].min()}, {self.__x[0].max()}]\n'
        x2 = f'x2:    [{self.__x[1].min()}, {self.__x[1].max()}]'
        return header + divider + shape + x1 + x2

    @classmethod
    def uniform(cls, grid: ComputationalGrid) -> 'MeshCoordinates':
        """Physical mesh coinciding with the computational grid."""
        return cls(grid, grid.nodes())

    @property
    def grid(self) -> ComputationalGrid:
        return self.__grid

    @property
    def x(self) -> ndarray:
        """Coordinates with shape ``(2, N1, N2)``."""
        return self.__x

    @property
    def x1(self) -> ndarray:
        return self.__x[0]

    @property
    def x2(self) -> ndarray:
        return self.__x[1]

    def moved(self, displacement: ndarray) -> 'MeshCoordinates':
        """New coordinates displaced by the given field."""
        return MeshCoordinates(self.__grid, self.__x + displacement)

    @staticmethod
    def __validated(grid: ComputationalGrid, x: ndarray) -> ndarray:
        x = array(asarray(x, dtype=float64))
        expected = (2,) + grid.shape
        if x.shape != expected:
            msg = f'Coordinates must have shape {expected}, not {x.shape}!'
            raise ValueError(msg)
        return x
