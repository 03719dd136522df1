"""High-order interface fluxes assembled from two-point kernels."""
from numpy import ndarray

from ..boundary import HALO
from ..fluxes import _curvilinear_flux, _source_kernel
from ..metrics import MeshMetrics, SchemeOrder, metric_interface_flux
from ..state import PhysicsParams
from ..stencil import interface_combination


def high_order_interface_flux(states: ndarray, metrics: MeshMetrics,
                              order: SchemeOrder, axis: int,
                              params: PhysicsParams) -> ndarray:
    """2p-th order energy-conservative flux at every interface of an axis.

    Parameters
    ----------
    states: ndarray
        States padded by a halo of width 3, shape ``(4, N1 + 6, N2 + 6)``.
    metrics: MeshMetrics
        Metrics of the current mesh.
    order: SchemeOrder
        Combination coefficients.
    axis: int
        Computational direction the interfaces are normal to.
    params: PhysicsParams
        Physical constants.

    Returns
    -------
    ndarray
        Interface fluxes with leading dimension 4.

    Raises
    ------
    HaloError
        If the halo is too narrow for the order.

    """
    g = params.g

    def kernel(UL, mL, UR, mR):
        return _curvilinear_flux(UL, UR, mL, mR, g)

    return interface_combination(kernel, [states, metrics.triple(axis)],
                                 order.alpha, axis, HALO)


def high_order_source_flux(b: ndarray, metrics: MeshMetrics,
                           order: SchemeOrder, axis: int) -> ndarray:
    """2p-th order topography flux at every interface of an axis.

    Only components 2 and 3 are non-zero. Multiplied by the nodal depth,
    its difference across a node balances the pressure part of the
    interface flux for a lake at rest.

    """
    def kernel(bL, mL, bR, mR):
        return _source_kernel(bL, bR, mL, mR)

    return interface_combination(kernel, [b, metrics.triple(axis)],
                                 order.alpha, axis, HALO)


def volume_flux(metrics: MeshMetrics, order: SchemeOrder,
                axis: int) -> ndarray:
    """Interface value of the temporal metric entering the volume law."""
    return metric_interface_flux(metrics.temporal[axis], order, axis, HALO)
