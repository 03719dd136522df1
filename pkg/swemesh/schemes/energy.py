"""Discrete energy diagnostics of the semi-discrete schemes.

The rate of the Jacobian-weighted energy at a node follows from the chain
rule as :math:`V^T\\partial_t(JU) - \\phi\\,\\partial_tJ`. For the
energy-conservative scheme it is balanced by the difference of the
numerical energy fluxes up to a term proportional to the residual of the
discrete surface conservation law. The energy-stable scheme adds a
non-positive production at every node.

"""
from typing import List, NamedTuple, Optional
from numpy import ndarray, asarray, zeros, einsum, float64

from ..boundary import HALO, apply_boundary
from ..fluxes import mean, _curvilinear_flux
from ..grid import ComputationalGrid
from ..metrics import MeshMetrics, scl_residual
from ..state import (PhysicsParams, StateT, validated, energy_pair,
                     energy_variables)
from ..stencil import interface_combination, interface_pairs, difference
from .rhs import SemiDiscreteRhs


class EnergyBalance(NamedTuple):
    """Nodal terms of the semi-discrete energy balance.

    The residual is ``rate + divergence + scl_term``. It vanishes to
    rounding for the energy-conservative scheme and equals ``-production``
    for the energy-stable one.

    """
    rate: ndarray
    divergence: ndarray
    production: ndarray
    scl_term: ndarray
    residual: ndarray

    def total_rate(self, grid: ComputationalGrid) -> float:
        """Rate of change of the total energy."""
        return float(self.rate.sum() * grid.cell_volume)


def _energy_kernel(UL: ndarray, mL: ndarray, UR: ndarray, mR: ndarray,
                   params: PhysicsParams) -> ndarray:
    flux = _curvilinear_flux(UL, UR, mL, mR, params.g)
    VL, VR = energy_variables(UL, params), energy_variables(UR, params)
    left, right = energy_pair(UL, params), energy_pair(UR, params)
    b = mean(UL[3], UR[3])
    m1, m2 = mean(mL[1], mR[1]), mean(mL[2], mR[2])
    return ((mean(VL, VR) * flux).sum(axis=0)
            - mean(mL[0], mR[0]) * mean(left.phi, right.phi)
            - m1 * mean(left.psi1, right.psi1)
            - m2 * mean(left.psi2, right.psi2)
            + params.g * b * (m1 * mean(UL[1], UR[1])
                              + m2 * mean(UL[2], UR[2])))


def numerical_energy_flux(UL: StateT, UR: StateT, metric_left: ndarray,
                          metric_right: ndarray,
                          params: Optional[PhysicsParams] = None) -> ndarray:
    """Two-point numerical energy flux matching the conservative flux.

    Parameters
    ----------
    UL: ConservedState or ndarray
        Left state(s).
    UR: ConservedState or ndarray
        Right state(s).
    metric_left: ndarray
        Left metric triple(s) ``(mt, m1, m2)``.
    metric_right: ndarray
        Right metric triple(s).
    params: PhysicsParams, optional
        Physical constants. Defaults to g = 1 and gamma = 1.

    Returns
    -------
    ndarray
        The energy flux

        .. math:: \\tilde{Q} = \\{V\\}^T\\tilde{\\mathcal{F}}
                  - \\{m_t\\}\\{\\phi\\} - \\sum_k\\{m_k\\}\\{\\psi_k\\}
                  + g\\sum_k\\{m_k\\}\\{b\\}\\{hv_k\\}

        which reduces to :math:`m_t\\eta + \\sum_k m_kq_k` for equal states.

    """
    params = PhysicsParams() if params is None else params
    UL, UR = validated(UL), validated(UR)
    metric_left = asarray(metric_left, dtype=float64)
    metric_right = asarray(metric_right, dtype=float64)
    return _energy_kernel(UL, metric_left, UR, metric_right, params)


def energy_flux_field(states: StateT, metrics: MeshMetrics, axis: int,
                      params: PhysicsParams,
                      rhs: Optional[SemiDiscreteRhs] = None) -> ndarray:
    """High-order numerical energy flux at all interfaces of one axis.

    If the right-hand side of an energy-stable scheme is given, the energy
    carried by its dissipation, :math:`\\{V\\}^TD` with the mean over the
    two adjacent nodes, is subtracted.

    """
    states = validated(states)
    grid = metrics.grid
    padded = apply_boundary(states, grid, HALO)

    def kernel(UL, mL, UR, mR):
        return _energy_kernel(UL, mL, UR, mR, params)

    flux = interface_combination(kernel, [padded, metrics.triple(axis)],
                                 metrics.order.alpha, axis, HALO)
    dissipation = _dissipation_of(rhs, axis)
    if dissipation is not None:
        left, right = _adjacent_variables(padded, axis, params)
        flux = flux - einsum('a...,a...->...', mean(left, right),
                             dissipation.total)
    return flux


def energy_production(states: StateT, metrics: MeshMetrics, axis: int,
                      params: PhysicsParams,
                      rhs: SemiDiscreteRhs) -> ndarray:
    """Energy dissipated at every interface of one axis, :math:`[V]^TD`."""
    dissipation = _dissipation_of(rhs, axis)
    states = validated(states)
    if dissipation is None:
        count = list(states.shape[1:])
        count[axis] += 1
        return zeros(count)
    padded = apply_boundary(states, metrics.grid, HALO)
    left, right = _adjacent_variables(padded, axis, params)
    return einsum('a...,a...->...', right - left, dissipation.total)


def total_energy(states: StateT, jacobian: ndarray, grid: ComputationalGrid,
                 params: PhysicsParams) -> float:
    """Discrete total energy :math:`\\sum J\\eta\\Delta\\xi_1\\Delta\\xi_2`."""
    eta = energy_pair(states, params).eta
    return float((jacobian * eta).sum() * grid.cell_volume)


def energy_balance(states: StateT, metrics: MeshMetrics,
                   rhs: SemiDiscreteRhs,
                   params: Optional[PhysicsParams] = None) -> EnergyBalance:
    """Nodal energy balance of a semi-discrete right-hand side.

    Parameters
    ----------
    states: ConservedState or ndarray
        The states the right-hand side was evaluated for.
    metrics: MeshMetrics
        The metrics it was evaluated with.
    rhs: SemiDiscreteRhs
        Output of an energy-conservative or energy-stable scheme.
    params: PhysicsParams, optional
        Physical constants. Defaults to g = 1 and gamma = 1.

    Returns
    -------
    EnergyBalance
        Rate, flux divergence, dissipation production, and residual at all
        interior nodes.

    """
    params = PhysicsParams() if params is None else params
    states = validated(states)
    grid = metrics.grid
    V = energy_variables(states, params)
    quantities = energy_pair(states, params)
    rate = einsum('a...,a...->...', V, rhs.dU) - quantities.phi * rhs.dJ
    divergence = zeros(grid.shape)
    production = zeros(grid.shape)
    for axis in grid.axes:
        spacing = grid.spacing[axis]
        flux = energy_flux_field(states, metrics, axis, params, rhs)
        divergence += difference(flux, axis) / spacing
        produced = energy_production(states, metrics, axis, params, rhs)
        production += _node_sum(produced, axis) / (2.0 * spacing)
    scl = scl_residual(metrics)
    scl_term = quantities.psi1 * scl[0] + quantities.psi2 * scl[1]
    residual = rate + divergence + scl_term
    return EnergyBalance(rate, divergence, production, scl_term, residual)


def _dissipation_of(rhs: Optional[SemiDiscreteRhs], axis: int):
    if rhs is None:
        return None
    fluxes: List = [f for f in rhs.fluxes if f.axis == axis]
    return fluxes[0].dissipation if fluxes else None


def _adjacent_variables(padded: ndarray, axis: int,
                        params: PhysicsParams) -> tuple:
    return interface_pairs(energy_variables(padded, params), axis, HALO, 1, 0)


def _node_sum(interfaces: ndarray, axis: int) -> ndarray:
    if axis == 0:
        return interfaces[..., 1:, :] + interfaces[..., :-1, :]
    return interfaces[..., 1:] + interfaces[..., :-1]
