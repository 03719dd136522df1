"""Slicing helpers shared by all interface sweeps.

Padded fields carry a halo of width ``halo`` on both grid axes. Interface
``k`` along an axis sits between nodes ``k - 1`` and ``k``, so there are
``N + 1`` interfaces for ``N`` interior nodes. Interface fields keep only
the interior nodes along the transverse axis.

"""
from typing import Callable, Sequence, Tuple
from numpy import ndarray, stack

from .exceptions import HaloError

Kernel = Callable[..., ndarray]


def interior(padded: ndarray, halo: int) -> ndarray:
    """Strip the halo from both trailing grid axes."""
    return padded[..., halo:padded.shape[-2] - halo,
                  halo:padded.shape[-1] - halo]


def window(padded: ndarray, axis: int, start: int,
           count: int, halo: int) -> ndarray:
    """Slice `count` entries along `axis` from padded index `start`.

    The transverse grid axis is restricted to its interior nodes.

    """
    if start < 0 or start + count > padded.shape[axis - 2]:
        msg = (f'Window [{start}, {start + count}) exceeds the padded '
               f'extent {padded.shape[axis - 2]} along axis {axis}!')
        raise HaloError(msg)
    along = slice(start, start + count)
    if axis == 0:
        transverse = slice(halo, padded.shape[-1] - halo)
        return padded[..., along, transverse]
    transverse = slice(halo, padded.shape[-2] - halo)
    return padded[..., transverse, along]


def interior_count(padded: ndarray, axis: int, halo: int) -> int:
    """Number of interior nodes along `axis` of a padded field."""
    return padded.shape[axis - 2] - 2 * halo


def interface_pairs(padded: ndarray, axis: int, halo: int,
                    m: int, s: int) -> Tuple[ndarray, ndarray]:
    """Node pairs ``(i - s, i - s + m)`` for every interface ``i + 1/2``."""
    n = interior_count(padded, axis, halo)
    start = halo - 1 - s
    left = window(padded, axis, start, n + 1, halo)
    right = window(padded, axis, start + m, n + 1, halo)
    return left, right


def interface_combination(kernel: Kernel, fields: Sequence[ndarray],
                          alpha: Sequence[float], axis: int,
                          halo: int) -> ndarray:
    """Combine a two-point kernel into a high-order interface value.

    The result at interface ``i + 1/2`` is

    .. math:: \\sum_{m=1}^{p}\\alpha_{p,m}\\sum_{s=0}^{m-1}
              K(a_{i-s}, a_{i-s+m})

    where `kernel` is called with the left entries of all `fields` followed
    by their right entries.

    Parameters
    ----------
    kernel: callable
        Two-point kernel.
    fields: sequence of ndarray
        Padded fields the kernel needs on both sides.
    alpha: sequence of float
        Combination coefficients, one per stencil offset `m`.
    axis: int
        Axis along which interfaces are formed.
    halo: int
        Halo width of the padded fields.

    Returns
    -------
    ndarray
        Interface values, shape ``(..., N1 + 1, N2)`` or ``(..., N1, N2 + 1)``.

    Raises
    ------
    HaloError
        If the halo is narrower than the number of coefficients.

    """
    if len(alpha) > halo:
        msg = f'Order {len(alpha)} needs a halo of at least {len(alpha)}!'
        raise HaloError(msg)
    total = None
    for m, coefficient in enumerate(alpha, start=1):
        for s in range(m):
            pairs = [interface_pairs(f, axis, halo, m, s) for f in fields]
            lefts = [pair[0] for pair in pairs]
            rights = [pair[1] for pair in pairs]
            term = coefficient * kernel(*lefts, *rights)
            total = term if total is None else total + term
    return total


def difference(interfaces: ndarray, axis: int) -> ndarray:
    """Nodal difference ``F(i + 1/2) - F(i - 1/2)`` of an interface field."""
    if axis == 0:
        return interfaces[..., 1:, :] - interfaces[..., :-1, :]
    return interfaces[..., 1:] - interfaces[..., :-1]


def interface_stencil(padded: ndarray, axis: int, halo: int,
                      width: int = 6) -> ndarray:
    """Stack the `width` nodes around every interface along a new first axis.

    For interface ``i + 1/2`` the nodes ``i - width/2 + 1, ..., i + width/2``
    are stacked, so entries ``width/2 - 1`` and ``width/2`` are the two
    nodes adjacent to the interface.

    """
    n = interior_count(padded, axis, halo)
    first = halo - width // 2
    return stack([window(padded, axis, first + r, n + 1, halo)
                  for r in range(width)])
