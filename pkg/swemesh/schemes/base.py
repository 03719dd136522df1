from typing import Optional
from numpy import ndarray, zeros

from ..boundary import HALO, apply_boundary
from ..dissipation import InterfaceDissipation
from ..metrics import MeshMetrics
from ..state import PhysicsParams, StateT, validated
from ..stencil import difference
from .assembly import (high_order_interface_flux, high_order_source_flux,
                       volume_flux)
from .rhs import InterfaceFluxes, SemiDiscreteRhs


class BaseScheme:
    """Base class for all flavours of semi-discrete schemes.

    Since the base class for all schemes is not supposed to ever be
    instantiated directly, it is also not documented. For more information,
    please refer to the docstrings of the individual schemes.

    """
    def __init__(self, params: Optional[PhysicsParams] = None) -> None:
        self.__params = PhysicsParams() if params is None else params

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        g = f'Gravity: {self.__params.g}\n'
        gamma = f'Gamma:   {self.__params.gamma}'
        return header + divider + g + gamma

    @property
    def params(self) -> PhysicsParams:
        """The physical constants."""
        return self.__params

    @property
    def kind(self) -> str:
        """Short name of the scheme family."""
        raise NotImplementedError

    def rhs(self, states: StateT, metrics: MeshMetrics) -> SemiDiscreteRhs:
        """Time derivatives of ``JU`` and ``J`` at all interior nodes.

        Parameters
        ----------
        states: ConservedState or ndarray
            Conserved variables at the interior nodes, shape ``(4, N1, N2)``.
        metrics: MeshMetrics
            Spatial and temporal metrics of the current mesh.

        Returns
        -------
        SemiDiscreteRhs
            Container with the time derivatives and the interface data.

        Raises
        ------
        PositivityError
            If a depth is not positive.

        """
        states = validated(states)
        grid, order = metrics.grid, metrics.order
        if states.shape[1:] != grid.shape:
            msg = (f'States of shape {states.shape[1:]} do not fit '
                   f'the grid of shape {grid.shape}!')
            raise ValueError(msg)
        padded = apply_boundary(states, grid, HALO)
        g_depth = self.__params.g * states[0]
        dU = zeros(states.shape)
        dJ = zeros(grid.shape)
        fluxes = []
        for axis in grid.axes:
            spacing = grid.spacing[axis]
            conservative = high_order_interface_flux(padded, metrics, order,
                                                     axis, self.__params)
            source = high_order_source_flux(padded[3], metrics, order, axis)
            volume = volume_flux(metrics, order, axis)
            dissipation = self._dissipation(padded, metrics, axis)
            flux = conservative
            if dissipation is not None:
                flux = conservative - dissipation.total
            dU -= difference(flux, axis) / spacing
            dU -= g_depth * difference(source, axis) / spacing
            dJ -= difference(volume, axis) / spacing
            fluxes.append(InterfaceFluxes(axis, conservative, flux,
                                          source, volume, dissipation))
        return SemiDiscreteRhs(dU, dJ, fluxes)

    def _dissipation(self, padded: ndarray, metrics: MeshMetrics,
                     axis: int) -> Optional[InterfaceDissipation]:
        """This must be implemented for each specific scheme flavour."""
        raise NotImplementedError
