from .ec import EnergyConservative, ec_rhs
from .es import EnergyStable, es_rhs
from .rhs import SemiDiscreteRhs, InterfaceFluxes
from .assembly import (high_order_interface_flux, high_order_source_flux,
                       volume_flux)
from .energy import (EnergyBalance, numerical_energy_flux, energy_flux_field,
                     energy_production, total_energy, energy_balance)
