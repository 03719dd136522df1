from typing import Optional
from numpy import ndarray

from ..metrics import MeshMetrics
from ..state import PhysicsParams, StateT
from .base import BaseScheme
from .rhs import SemiDiscreteRhs


class EnergyConservative(BaseScheme):
    """High-order energy-conservative and well-balanced scheme.

    The interface fluxes are :math:`2p`-th order combinations of two-point
    fluxes whose energy contraction telescopes, so the total modified energy

    .. math:: \\eta = \\frac{1}{2}h|v|^2 + \\frac{1}{2}gh^2 + ghb + \\gamma gb^2

    is conserved by the semi-discrete scheme for smooth solutions. The
    topography source is discretized with matching two-point fluxes, which
    makes the scheme preserve the lake at rest on static and moving meshes
    alike.

    Parameters
    ----------
    params: PhysicsParams, optional
        Physical constants. Defaults to g = 1 and gamma = 1.

    Notes
    -----
    The time derivative of the Jacobian follows from the volume
    conservation law discretized with the same combination coefficients
    as the fluxes. Together with the metrics computed by
    :func:`~swemesh.metrics.spatial_metrics`, this preserves a free stream
    on arbitrary moving meshes.

    """
    def __init__(self, params: Optional[PhysicsParams] = None) -> None:
        super().__init__(params)

    @property
    def kind(self) -> str:
        return 'ec'

    def _dissipation(self, padded: ndarray, metrics: MeshMetrics,
                     axis: int) -> None:
        """No dissipation at all."""
        return None


def ec_rhs(states: StateT, metrics: MeshMetrics,
           params: Optional[PhysicsParams] = None) -> SemiDiscreteRhs:
    """Right-hand side of the energy-conservative scheme."""
    return EnergyConservative(params).rhs(states, metrics)
