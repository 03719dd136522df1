from typing import List, NamedTuple, Optional
from numpy import ndarray, zeros, stack, concatenate

from ..boundary import extend_coordinates
from ..dissipation import InterfaceDissipation
from ..grid import MeshCoordinates


class InterfaceFluxes(NamedTuple):
    """Everything the scheme evaluated at the interfaces of one axis."""
    axis: int
    conservative: ndarray
    flux: ndarray
    source: ndarray
    volume: ndarray
    dissipation: Optional[InterfaceDissipation]


class SemiDiscreteRhs:
    """Container for the time derivatives of the conserved fields.

    Parameters
    ----------
    dU: ndarray
        Time derivative of the Jacobian-weighted state ``JU``, shape
        ``(4, N1, N2)``.
    dJ: ndarray
        Time derivative of the Jacobian, shape ``(N1, N2)``.
    fluxes: list of InterfaceFluxes
        Interface data of every active axis, kept for diagnostics.

    """
    def __init__(self, dU: ndarray, dJ: ndarray,
                 fluxes: List[InterfaceFluxes]) -> None:
        self.__dU = dU
        self.__dJ = dJ
        self.__fluxes = fluxes

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        shape = f'Shape:     {self.__dJ.shape}\n'
        axes = f'Axes:      {tuple(f.axis for f in self.__fluxes)}\n'
        size = f'Max |dJU|: {abs(self.__dU).max()}'
        return header + divider + shape + axes + size

    @property
    def dU(self) -> ndarray:
        """Time derivative of ``JU``."""
        return self.__dU

    @property
    def dJ(self) -> ndarray:
        """Time derivative of the Jacobian."""
        return self.__dJ

    @property
    def fluxes(self) -> List[InterfaceFluxes]:
        """Interface data of every active axis."""
        return self.__fluxes

    def gate_locations(self, coords: MeshCoordinates) -> ndarray:
        """Physical positions of interfaces where the second dissipation
        term acts on the topography.

        Returns
        -------
        ndarray
            Rows of ``(x1, x2, axis)``. Empty for schemes without it.

        """
        rows = []
        for data in self.__fluxes:
            if data.dissipation is None:
                continue
            active = data.dissipation.ring_active
            midpoints = _interface_midpoints(coords, data.axis)
            x1, x2 = midpoints[0][active], midpoints[1][active]
            rows.append(stack([x1, x2, zeros(x1.shape) + data.axis], axis=1))
        if not rows:
            return zeros((0, 3))
        return concatenate(rows)


def _interface_midpoints(coords: MeshCoordinates, axis: int) -> ndarray:
    x = extend_coordinates(coords.x, coords.grid, 1)
    if axis == 0:
        x = x[:, :, 1:-1]
        return (x[:, :-1] + x[:, 1:]) * 0.5
    x = x[:, 1:-1, :]
    return (x[:, :, :-1] + x[:, :, 1:]) * 0.5
