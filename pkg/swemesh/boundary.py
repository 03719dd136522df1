"""Halo filling for states, scalar fields, and mesh coordinates.

All grid fields carry their two grid axes last. Halos are added to both grid
axes; along an inactive axis (a single node) the halo simply repeats that
node, so the same slicing code serves one- and two-dimensional problems.

"""
from typing import TYPE_CHECKING
from numpy import ndarray, pad, arange, clip, take, floor, expand_dims

if TYPE_CHECKING:
    from .grid import ComputationalGrid

PERIODIC = 'periodic'
OUTFLOW = 'outflow'
HALO = 3


def apply_boundary(field: ndarray, grid: 'ComputationalGrid',
                   halo: int = HALO) -> ndarray:
    """Pad the two trailing grid axes of a field according to the grid.

    Periodic axes wrap around. Outflow axes copy the boundary node into all
    halo cells (zeroth-order extrapolation).

    Parameters
    ----------
    field: ndarray
        Field with shape ``(..., N1, N2)``.
    grid: ComputationalGrid
        Grid providing the boundary conditions.
    halo: int, optional
        Number of halo cells on each side. Defaults to 3.

    Returns
    -------
    ndarray
        Padded field with shape ``(..., N1 + 2 halo, N2 + 2 halo)``.

    """
    leading = [(0, 0)] * (field.ndim - 2)
    padded = field
    for axis, bc in enumerate(grid.boundaries):
        mode = 'wrap' if bc == PERIODIC and grid.shape[axis] > 1 else 'edge'
        widths = leading + [(0, 0), (0, 0)]
        widths[field.ndim - 2 + axis] = (halo, halo)
        padded = pad(padded, widths, mode=mode)
    return padded


def extend_coordinates(x: ndarray, grid: 'ComputationalGrid',
                       width: int) -> ndarray:
    """Extend node coordinates into a halo of the given width.

    * Periodic axes wrap around and shift the coordinate along that axis by
      multiples of the domain period.
    * Outflow axes extrapolate both coordinates linearly from the two
      outermost nodes.
    * The inactive axis of a one-dimensional problem advances its own
      coordinate by the computational spacing, keeping the metrics of the
      dummy direction at unity.

    Parameters
    ----------
    x: ndarray
        Coordinates with shape ``(2, N1, N2)``.
    grid: ComputationalGrid
        Grid providing boundary conditions, spacing, and periods.
    width: int
        Halo width on each side.

    Returns
    -------
    ndarray
        Extended coordinates with shape ``(2, N1 + 2 width, N2 + 2 width)``.

    """
    extended = x
    for axis in (0, 1):
        extended = _extend_axis(extended, grid, axis, width)
    return extended


def _extend_axis(x: ndarray, grid: 'ComputationalGrid',
                 axis: int, width: int) -> ndarray:
    n = x.shape[axis + 1]
    index = arange(-width, n + width)
    shape = [1, 1]
    shape[axis] = index.size
    if n == 1:
        extended = take(x, clip(index, 0, 0), axis=axis + 1)
        offset = (index * grid.spacing[axis]).reshape(shape)
        extended[axis] = extended[axis] + offset
        return extended
    if grid.boundaries[axis] == PERIODIC:
        extended = take(x, index % n, axis=axis + 1)
        shift = (floor(index / n) * grid.periods[axis]).reshape(shape)
        extended[axis] = extended[axis] + shift
        return extended
    extended = take(x, clip(index, 0, n - 1), axis=axis + 1)
    first = take(x, [0], axis=axis + 1)
    second = take(x, [1], axis=axis + 1)
    last = take(x, [n - 1], axis=axis + 1)
    before = take(x, [n - 2], axis=axis + 1)
    below = expand_dims(clip(index, None, 0).reshape(shape), 0)
    above = expand_dims(clip(index - n + 1, 0, None).reshape(shape), 0)
    return extended + below * (second - first) + above * (last - before)
