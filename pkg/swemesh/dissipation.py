"""Dissipation terms turning energy-conservative into energy-stable fluxes.

Two terms are subtracted from the energy-conservative interface flux:

* :math:`\\hat{D}` acts on depth and discharges. It reconstructs the
  *scaled* entropy variables, projected with the rotation and scaled
  eigenvectors frozen at the interface, and is weighted by the spectral
  radius of the normal flux.
* :math:`\\mathring{D}` acts on all four conserved variables and is weighted
  by the mesh speed through the interface. Depth and topography are
  reconstructed with shared coefficients so that it vanishes for a lake at
  rest.

Both use a sign switch: a component only dissipates where its reconstructed
jump has the same sign as the raw jump of the corresponding energy variable,
which makes the dissipated energy non-negative.

All functions take 6-node stencils ``(4, 6, ...)`` around each interface,
with nodes 2 and 3 adjacent to it, and broadcast over trailing dimensions.

"""
from typing import NamedTuple
from numpy import (ndarray, asarray, einsum, sqrt, sign, maximum,
                   abs as abs_, zeros, zeros_like, stack, concatenate, float64)

from .state import (PhysicsParams, validated, rotation_matrix, eigen_scaling,
                    energy_variables, original_entropy_variables)
from .weno import reconstruct_interfaces, reconstruct_paired

GATE_TOLERANCE = 1e-14


class InterfaceDissipation(NamedTuple):
    """Both dissipation vectors and their sign switches at interfaces."""
    d_hat: ndarray
    d_ring: ndarray
    gate_hat: ndarray
    gate_ring: ndarray

    @property
    def total(self) -> ndarray:
        """The 4-vector subtracted from the energy-conservative flux."""
        return padded_hat(self.d_hat) + self.d_ring

    @property
    def ring_active(self) -> ndarray:
        """Where the second term acts on the topography."""
        return (self.gate_ring[3] > 0.0) & (abs_(self.d_ring[3])
                                             > GATE_TOLERANCE)


def padded_hat(d_hat: ndarray) -> ndarray:
    """Append a zero 4th component to the first dissipation vector."""
    return concatenate([d_hat, zeros_like(d_hat[:1])])


def sign_switch(reconstructed: ndarray, raw: ndarray) -> ndarray:
    """Gate that is 1 where both jumps agree in sign (zero counts as both)."""
    return (sign(reconstructed) * sign(raw) >= 0.0).astype(float64)


def ring_switches(reconstructed: ndarray, raw: ndarray) -> ndarray:
    """Sign switches of the second term for all four components.

    Depth and topography share one switch, which is on only where both of
    their reconstructed jumps agree in sign with the raw jumps.

    """
    coupled = (sign_switch(reconstructed[0], raw[0])
               * sign_switch(reconstructed[3], raw[3]))
    return stack([coupled, sign_switch(reconstructed[1], raw[1]),
                  sign_switch(reconstructed[2], raw[2]), coupled])


def spectral_radius(U: ndarray, metric: ndarray,
                    params: PhysicsParams) -> ndarray:
    """Largest absolute eigenvalue of the flux normal to a moving interface.

    Parameters
    ----------
    U: ndarray
        State(s) with leading dimension 4.
    metric: ndarray
        Metric triple(s) ``(mt, m1, m2)`` with leading dimension 3.
    params: PhysicsParams
        Physical constants.

    Returns
    -------
    ndarray
        :math:`\\max_w|m_t + \\tilde{L}\\lambda_w|` over the eigenvalues
        :math:`v_n \\pm c` and :math:`v_n` of the normal direction, where
        :math:`\\tilde{L}` is the length of the metric vector.

    """
    U = validated(U)
    metric = asarray(metric, dtype=float64)
    mt, m1, m2 = metric
    normal = (U[1] * m1 + U[2] * m2) / U[0]
    wave = sqrt(params.g * U[0]) * sqrt(m1 * m1 + m2 * m2)
    return maximum(maximum(abs_(mt + normal + wave), abs_(mt + normal - wave)),
                   abs_(mt + normal))


def interface_state(stencil: ndarray) -> ndarray:
    """Arithmetic mean of the two states adjacent to each interface."""
    return (stencil[:, 2] + stencil[:, 3]) * 0.5


def dissipation_hat(stencil: ndarray, metric: ndarray,
                    params: PhysicsParams) -> tuple:
    """First dissipation term, built on the scaled entropy variables.

    Parameters
    ----------
    stencil: ndarray
        States at the six nodes around each interface, shape ``(4, 6, ...)``.
    metric: ndarray
        Metric triple(s) ``(mt, m1, m2)`` frozen at the interface.
    params: PhysicsParams
        Physical constants.

    Returns
    -------
    tuple of ndarray
        The 3-vector acting on depth and discharges, and its sign switch.

    Raises
    ------
    PositivityError
        If any depth in the stencil is not positive.
    DegenerateMetricError
        If the interface metric vector vanishes.

    Notes
    -----
    With the rotation `T` and the scaled eigenvectors `R` evaluated at the
    rotated interface state, the scaled entropy variables are
    :math:`\\tilde{V} = R^TT\\hat{V}` and the term reads

    .. math:: \\hat{D} = \\frac{1}{2}\\alpha T^{-1}R\\hat{Y}
              [\\tilde{V}]^{WENO}

    """
    stencil = validated(stencil)
    metric = asarray(metric, dtype=float64)
    state = interface_state(stencil)
    T = rotation_matrix(metric[1], metric[2])
    rotated = concatenate([einsum('ab...,b...->a...', T, state[:3]),
                           state[3:]])
    R, _ = eigen_scaling(rotated, params)
    alpha = spectral_radius(state, metric, params)
    projection = einsum('ba...,bc...->ac...', R, T)
    entropy = original_entropy_variables(stencil, params)
    scaled = einsum('ab...,br...->ra...', projection, entropy)
    minus, plus, _, _ = reconstruct_interfaces(scaled)
    reconstructed = plus - minus
    raw = scaled[3] - scaled[2]
    gate = sign_switch(reconstructed, raw)
    d_hat = 0.5 * alpha * einsum('ba...,bc...,c...->a...',
                                 T, R, gate * reconstructed)
    return d_hat, gate


def dissipation_ring(stencil: ndarray, mt: ndarray,
                     params: PhysicsParams) -> tuple:
    """Second dissipation term, acting on the conserved variables.

    Parameters
    ----------
    stencil: ndarray
        States at the six nodes around each interface, shape ``(4, 6, ...)``.
    mt: ndarray
        Temporal metric frozen at the interface.
    params: PhysicsParams
        Physical constants.

    Returns
    -------
    tuple of ndarray
        The 4-vector and its sign switch. The switches of depth and
        topography are always equal.

    """
    stencil = validated(stencil)
    mt = asarray(mt, dtype=float64)
    variables = energy_variables(stencil[:, 2:4], params)
    raw = variables[:, 1] - variables[:, 0]
    b_jump, h_jump = reconstruct_paired(stencil[3], stencil[0])
    hv1_minus, hv1_plus, _, _ = reconstruct_interfaces(stencil[1])
    hv2_minus, hv2_plus, _, _ = reconstruct_interfaces(stencil[2])
    reconstructed = stack([h_jump, hv1_plus - hv1_minus,
                           hv2_plus - hv2_minus, b_jump])
    gate = ring_switches(reconstructed, raw)
    return 0.5 * abs_(mt) * gate * reconstructed, gate


def interface_dissipation(stencil: ndarray, metric: ndarray,
                          params: PhysicsParams,
                          ring: bool = True) -> InterfaceDissipation:
    """Both dissipation terms at a set of interfaces.

    Parameters
    ----------
    stencil: ndarray
        States at the six nodes around each interface, shape ``(4, 6, ...)``.
    metric: ndarray
        Metric triple(s) frozen at the interfaces.
    params: PhysicsParams
        Physical constants.
    ring: bool, optional
        Include the second, mesh-speed weighted term. Defaults to True.

    Returns
    -------
    InterfaceDissipation
        Dissipation vectors and sign switches.

    """
    d_hat, gate_hat = dissipation_hat(stencil, metric, params)
    if ring:
        d_ring, gate_ring = dissipation_ring(stencil, metric[0], params)
    else:
        d_ring = zeros((4,) + d_hat.shape[1:])
        gate_ring = zeros((4,) + d_hat.shape[1:])
    return InterfaceDissipation(d_hat, d_ring, gate_hat, gate_ring)


def es_interface_flux(ec_flux: ndarray, d_hat: ndarray,
                      d_ring: ndarray) -> ndarray:
    """Energy-stable flux: conservative flux minus both dissipation terms."""
    return ec_flux - padded_hat(asarray(d_hat)) - d_ring
