from typing import Optional
from numpy import ndarray, moveaxis

from ..boundary import HALO
from ..dissipation import InterfaceDissipation, interface_dissipation
from ..metrics import MeshMetrics
from ..state import PhysicsParams, StateT
from ..stencil import interface_pairs, interface_stencil
from .ec import EnergyConservative
from .rhs import SemiDiscreteRhs


class EnergyStable(EnergyConservative):
    """High-order energy-stable and well-balanced scheme.

    The energy-conservative interface fluxes are augmented by two
    dissipation terms built from fifth-order WENO-Z reconstructions and
    gated by sign switches, which makes the total modified energy
    non-increasing.

    Parameters
    ----------
    params: PhysicsParams, optional
        Physical constants. Defaults to g = 1 and gamma = 1.
    ring_dissipation: bool, optional
        Whether to include the second dissipation term, which is weighted
        by the speed of the mesh through the interface. Switching it off
        reproduces the variant prone to spurious oscillations of the
        topography near its discontinuities on moving meshes. Defaults
        to True.

    Notes
    -----
    The first term :math:`\\hat{D}` is weighted by the spectral radius of
    the normal flux and dissipates the scaled entropy variables. The second
    term :math:`\\mathring{D}` is weighted by :math:`|J\\partial\\xi/\\partial
    t|` and dissipates the conserved variables, with depth and topography
    reconstructed by the same coefficients. Both vanish for the lake at
    rest, so the scheme stays well-balanced.

    """
    def __init__(self, params: Optional[PhysicsParams] = None,
                 ring_dissipation: bool = True) -> None:
        super().__init__(params)
        self.__ring = bool(ring_dissipation)

    def __repr__(self) -> str:
        ring = f'\nRing term: {self.__ring}'
        return super().__repr__() + ring

    @property
    def kind(self) -> str:
        return 'es'

    @property
    def ring_dissipation(self) -> bool:
        """Is the mesh-speed weighted dissipation term included?"""
        return self.__ring

    def _dissipation(self, padded: ndarray, metrics: MeshMetrics,
                     axis: int) -> InterfaceDissipation:
        """Both dissipation terms at all interfaces of one axis."""
        stencil = moveaxis(interface_stencil(padded, axis, HALO), 0, 1)
        left, right = interface_pairs(metrics.triple(axis), axis, HALO, 1, 0)
        metric = (left + right) * 0.5
        return interface_dissipation(stencil, metric, self.params, self.__ring)


def es_rhs(states: StateT, metrics: MeshMetrics,
           params: Optional[PhysicsParams] = None,
           ring_dissipation: bool = True) -> SemiDiscreteRhs:
    """Right-hand side of the energy-stable scheme."""
    return EnergyStable(params, ring_dissipation).rhs(states, metrics)
