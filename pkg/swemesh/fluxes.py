"""Two-point energy-conservative fluxes and the matching source fluxes.

Means and jumps are evaluated in a fixed order, ``(L + R) * 0.5`` and
``R - L``, so all fluxes are symmetric in their two arguments up to
rounding. Like the state algebra, everything here broadcasts over trailing
grid dimensions.

"""
from typing import Union
from numpy import ndarray, asarray, stack, zeros_like, abs as abs_, maximum

from .state import (PhysicsParams, StateT, validated,
                    energy_pair, energy_variables)

Real = Union[float, ndarray]


def mean(left: Real, right: Real) -> Real:
    """Arithmetic mean of left and right values."""
    return (left + right) * 0.5


def jump(left: Real, right: Real) -> Real:
    """Jump from left to right value."""
    return right - left


def product_jump(a_left: Real, a_right: Real,
                 b_left: Real, b_right: Real) -> Real:
    """Jump of a product expanded as ``[a]{b} + {a}[b]``."""
    return (jump(a_left, a_right) * mean(b_left, b_right)
            + mean(a_left, a_right) * jump(b_left, b_right))


class TwoPointInput:
    """States and metric triples on both sides of an interface.

    A metric triple is :math:`(J\\partial\\xi/\\partial t,
    J\\partial\\xi/\\partial x_1, J\\partial\\xi/\\partial x_2)` of the
    computational direction the interface is normal to.

    Parameters
    ----------
    UL: ConservedState or ndarray
        Left state(s).
    UR: ConservedState or ndarray
        Right state(s).
    metric_left: ndarray
        Left metric triple(s) with leading dimension 3.
    metric_right: ndarray
        Right metric triple(s) with leading dimension 3.

    Raises
    ------
    PositivityError
        If any depth is not positive.

    """
    def __init__(self, UL: StateT, UR: StateT,
                 metric_left: ndarray, metric_right: ndarray) -> None:
        self.__UL = validated(UL)
        self.__UR = validated(UR)
        self.__ml = self.__validated(metric_left)
        self.__mr = self.__validated(metric_right)

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        left = f'Left:  {self.__UL.tolist()}, metric {self.__ml.tolist()}\n'
        right = f'Right: {self.__UR.tolist()}, metric {self.__mr.tolist()}'
        return header + divider + left + right

    @property
    def UL(self) -> ndarray:
        return self.__UL

    @property
    def UR(self) -> ndarray:
        return self.__UR

    @property
    def metric_left(self) -> ndarray:
        return self.__ml

    @property
    def metric_right(self) -> ndarray:
        return self.__mr

    def swapped(self) -> 'TwoPointInput':
        """The same interface seen from the other side."""
        return TwoPointInput(self.__UR, self.__UL, self.__mr, self.__ml)

    @staticmethod
    def __validated(metric: ndarray) -> ndarray:
        metric = asarray(metric, dtype=float)
        if metric.shape[:1] != (3,):
            msg = (f'Metric triples need leading dimension 3,'
                   f' not {metric.shape}!')
            raise ValueError(msg)
        return metric


def two_point_U(UL: StateT, UR: StateT) -> ndarray:
    """Two-point state ``({h}, {h}{v1}, {h}{v2}, {b})``."""
    UL, UR = validated(UL), validated(UR)
    return _two_point_U(UL, UR)


def _two_point_U(UL: ndarray, UR: ndarray) -> ndarray:
    h = mean(UL[0], UR[0])
    v1 = mean(UL[1] / UL[0], UR[1] / UR[0])
    v2 = mean(UL[2] / UL[0], UR[2] / UR[0])
    return stack([h, h * v1, h * v2, mean(UL[3], UR[3])])


def two_point_F(UL: StateT, UR: StateT, params: PhysicsParams,
                axis: int) -> ndarray:
    """Two-point energy-conservative flux in one coordinate direction.

    Parameters
    ----------
    UL: ConservedState or ndarray
        Left state(s).
    UR: ConservedState or ndarray
        Right state(s).
    params: PhysicsParams
        Physical constants.
    axis: int
        Coordinate direction, 0 or 1.

    Returns
    -------
    ndarray
        The flux. Its 4th component is zero.

    Notes
    -----
    With :math:`\\{\\cdot\\}` denoting arithmetic means, the momentum flux
    along the direction is

    .. math:: \\{h\\}\\{v\\}^2 + \\frac{g}{2}\\{h^2\\}
              + g(\\{hb\\} - \\{h\\}\\{b\\})

    and the flux satisfies
    :math:`[V]^T\\tilde{F} = [\\psi] - \\frac{g}{2}[hv](b_L + b_R)`.

    """
    if axis not in (0, 1):
        raise ValueError(f'Axis must be 0 or 1, not {axis}!')
    UL, UR = validated(UL), validated(UR)
    return _two_point_F(UL, UR, params.g)[axis]


def _two_point_F(UL: ndarray, UR: ndarray, g: float) -> tuple:
    hL, hR, bL, bR = UL[0], UR[0], UL[3], UR[3]
    h = mean(hL, hR)
    v1 = mean(UL[1] / hL, UR[1] / hR)
    v2 = mean(UL[2] / hL, UR[2] / hR)
    pressure = (0.5 * g * mean(hL * hL, hR * hR)
                + g * (mean(hL * bL, hR * bR) - h * mean(bL, bR)))
    zero = zeros_like(h)
    first = stack([h * v1, h * v1 * v1 + pressure, h * v1 * v2, zero])
    second = stack([h * v2, h * v1 * v2, h * v2 * v2 + pressure, zero])
    return first, second


def _curvilinear_flux(UL: ndarray, UR: ndarray, mL: ndarray, mR: ndarray,
                      g: float) -> ndarray:
    first, second = _two_point_F(UL, UR, g)
    return (mean(mL[0], mR[0]) * _two_point_U(UL, UR)
            + mean(mL[1], mR[1]) * first
            + mean(mL[2], mR[2]) * second)


def curvilinear_two_point_flux(inp: TwoPointInput,
                               params: PhysicsParams) -> ndarray:
    """Two-point flux through a moving curvilinear interface.

    It is the metric-weighted combination

    .. math:: \\tilde{\\mathcal{F}} = \\{m_t\\}\\tilde{U}
              + \\sum_k \\{m_k\\}\\tilde{F}_k

    of the two-point state and the two-point fluxes.

    """
    return _curvilinear_flux(inp.UL, inp.UR, inp.metric_left,
                             inp.metric_right, params.g)


def two_point_source(b_left: Real, b_right: Real,
                     metric_left: ndarray, metric_right: ndarray) -> ndarray:
    """Two-point flux of the topography source term.

    Components 2 and 3 are :math:`\\frac{1}{4}(m_{kL}+m_{kR})(b_L+b_R)`,
    components 1 and 4 are zero.

    """
    metric_left = asarray(metric_left, dtype=float)
    metric_right = asarray(metric_right, dtype=float)
    return _source_kernel(asarray(b_left, dtype=float),
                          asarray(b_right, dtype=float),
                          metric_left, metric_right)


def _source_kernel(bL: ndarray, bR: ndarray,
                   mL: ndarray, mR: ndarray) -> ndarray:
    b = mean(bL, bR)
    zero = zeros_like(b * mL[1])
    return stack([zero, mean(mL[1], mR[1]) * b,
                  mean(mL[2], mR[2]) * b, zero])


def ec_condition_terms(inp: TwoPointInput,
                       params: PhysicsParams) -> tuple:
    """Both sides of the two-point energy-conservation condition.

    Returns
    -------
    tuple of ndarray
        The contraction :math:`[V]^T\\tilde{\\mathcal{F}}` and the right-hand
        side :math:`\\{m_t\\}[\\phi] + \\sum_k\\{m_k\\}([\\psi_k]
        - \\frac{g}{2}[hv_k](b_L + b_R))`.

    """
    UL, UR = inp.UL, inp.UR
    mL, mR = inp.metric_left, inp.metric_right
    g = params.g
    flux = _curvilinear_flux(UL, UR, mL, mR, g)
    dV = jump(energy_variables(UL, params), energy_variables(UR, params))
    lhs = (dV * flux).sum(axis=0)
    left, right = energy_pair(UL, params), energy_pair(UR, params)
    b_sum = UL[3] + UR[3]
    rhs = mean(mL[0], mR[0]) * jump(left.phi, right.phi)
    rhs = rhs + mean(mL[1], mR[1]) * (jump(left.psi1, right.psi1)
                                      - 0.5 * g * jump(UL[1], UR[1]) * b_sum)
    rhs = rhs + mean(mL[2], mR[2]) * (jump(left.psi2, right.psi2)
                                      - 0.5 * g * jump(UL[2], UR[2]) * b_sum)
    return lhs, rhs


def ec_condition_scale(inp: TwoPointInput, params: PhysicsParams) -> ndarray:
    """Magnitude against which the condition residual is judged."""
    left, right = energy_pair(inp.UL, params), energy_pair(inp.UR, params)
    scale = maximum(abs_(left.phi), abs_(right.phi))
    for psi in (left.psi1, left.psi2, right.psi1, right.psi2):
        scale = maximum(scale, abs_(psi))
    for metric, U in ((inp.metric_left, inp.UL), (inp.metric_right, inp.UR)):
        size = abs_(metric).max(axis=0) * abs_(U).max(axis=0)
        scale = maximum(scale, size * (1.0 + abs_(U[0]) * params.g))
    return maximum(scale, 1.0)


def ec_condition_residual(inp: TwoPointInput,
                          params: PhysicsParams) -> ndarray:
    """Absolute residual of the two-point energy-conservation condition."""
    lhs, rhs = ec_condition_terms(inp, params)
    return abs_(lhs - rhs)

