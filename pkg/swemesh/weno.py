"""Fifth-order WENO-Z reconstruction of interface values.

The nodal values of a stencil are treated as cell averages, and every
reconstruction is written as an explicit linear combination
:math:`\\sum_r\\beta_r f_{i+r}` with *effective coefficients* β_r. Keeping
the coefficients around lets the depth be reconstructed with exactly the
combination found for the topography, so that a flat free surface stays
flat across every interface.

"""
from typing import NamedTuple, Sequence, Union
from numpy import (ndarray, asarray, array, einsum, abs as abs_, isfinite,
                   all as all_, float64)

EPSILON = 1e-40
POWER = 2
IDEAL = array([0.1, 0.6, 0.3])
SUBSTENCILS = array([[2.0, -7.0, 11.0, 0.0, 0.0],
                     [0.0, -1.0, 5.0, 2.0, 0.0],
                     [0.0, 0.0, 2.0, 5.0, -1.0]]) / 6.0
LEFT, RIGHT = 'left', 'right'

Window = Union[Sequence[float], ndarray]


class WenoWeights(NamedTuple):
    """Nonlinear weights and effective coefficients of a reconstruction."""
    omega: ndarray
    beta: ndarray


def smoothness(f: ndarray) -> ndarray:
    """Smoothness indicators of the three sub-stencils of a 5-point window."""
    f0, f1, f2, f3, f4 = f
    beta0 = (13.0 / 12.0 * (f0 - 2.0 * f1 + f2) ** 2
             + 0.25 * (f0 - 4.0 * f1 + 3.0 * f2) ** 2)
    beta1 = (13.0 / 12.0 * (f1 - 2.0 * f2 + f3) ** 2
             + 0.25 * (f1 - f3) ** 2)
    beta2 = (13.0 / 12.0 * (f2 - 2.0 * f3 + f4) ** 2
             + 0.25 * (3.0 * f2 - 4.0 * f3 + f4) ** 2)
    return asarray([beta0, beta1, beta2])


def nonlinear_weights(f: ndarray) -> ndarray:
    """WENO-Z weights of a left-biased 5-point window.

    Parameters
    ----------
    f: ndarray
        Window values :math:`f_{i-2},\\dots,f_{i+2}` along the first axis.

    Returns
    -------
    ndarray
        The three weights along the first axis, summing to one.

    """
    beta = smoothness(f)
    tau = abs_(beta[0] - beta[2])
    alpha = einsum('k,k...->k...', IDEAL,
                   1.0 + (tau / (beta + EPSILON)) ** POWER)
    return alpha / alpha.sum(axis=0)


def effective_coefficients(omega: ndarray) -> ndarray:
    """Collapse nonlinear weights into five coefficients acting on a window."""
    return einsum('k...,kr->r...', omega, SUBSTENCILS)


def combine(beta: ndarray, f: ndarray) -> ndarray:
    """Apply effective coefficients to a window of values."""
    return einsum('r...,r...->...', beta, f)


def _left(f: ndarray) -> tuple:
    omega = nonlinear_weights(f)
    beta = effective_coefficients(omega)
    return combine(beta, f), WenoWeights(omega, beta)


def _finite(window: Window) -> ndarray:
    f = asarray(window, dtype=float64)
    if f.shape[:1] != (5,):
        raise ValueError(f'Windows need 5 values, not {f.shape[:1]}!')
    if not all_(isfinite(f)):
        raise ValueError('Window values must all be finite!')
    return f


def weno_z_left(window: Window) -> tuple:
    """Left limit at :math:`i+1/2` from the window :math:`f_{i-2..i+2}`.

    Parameters
    ----------
    window: sequence of float or ndarray
        Five values along the first axis, trailing dimensions broadcast.

    Returns
    -------
    tuple
        The reconstructed value and its :class:`WenoWeights`.

    Raises
    ------
    ValueError
        If the window is not 5 long or contains non-finite values.

    """
    return _left(_finite(window))


def weno_z_right(window: Window) -> tuple:
    """Right limit at :math:`i+1/2` from the window :math:`f_{i-1..i+3}`.

    This is the mirror image of :func:`weno_z_left`. The returned effective
    coefficients refer to the reversed window.

    """
    return _left(_finite(window)[::-1])


def paired_reconstruct(b_window: Window, h_window: Window,
                       side: str = LEFT) -> tuple:
    """Reconstruct topography and depth with the same coefficients.

    The weights are computed from the topography alone and then applied to
    the depth as well, so a constant :math:`h + b` is reproduced exactly.

    Parameters
    ----------
    b_window: sequence of float or ndarray
        Topography window.
    h_window: sequence of float or ndarray
        Depth window on the same nodes.
    side: str, optional
        Either "left" or "right". Defaults to "left".

    Returns
    -------
    tuple of ndarray
        The reconstructed topography and depth.

    """
    b, h = _finite(b_window), _finite(h_window)
    if side == RIGHT:
        b, h = b[::-1], h[::-1]
    elif side != LEFT:
        raise ValueError(f'Side must be "{LEFT}" or "{RIGHT}", not "{side}"!')
    value, weights = _left(b)
    return value, combine(weights.beta, h)


def reconstruct_interfaces(stencil: ndarray) -> tuple:
    """Left and right limits from 6-node interface stencils.

    Parameters
    ----------
    stencil: ndarray
        Values at the nodes :math:`i-2,\\dots,i+3` around every interface
        :math:`i+1/2`, stacked along the first axis.

    Returns
    -------
    tuple
        Left limits, right limits, and the :class:`WenoWeights` of both.

    """
    minus, left = _left(stencil[0:5])
    plus, right = _left(stencil[5:0:-1])
    return minus, plus, left, right


def reconstruct_paired(b_stencil: ndarray, h_stencil: ndarray) -> tuple:
    """Interface jumps of topography and depth sharing their coefficients.

    Returns
    -------
    tuple of ndarray
        The reconstructed jumps of `b` and of `h`.

    """
    b_minus, b_plus, left, right = reconstruct_interfaces(b_stencil)
    h_minus = combine(left.beta, h_stencil[0:5])
    h_plus = combine(right.beta, h_stencil[5:0:-1])
    return b_plus - b_minus, h_plus - h_minus
