import logging
from numpy import seterr

from .state import PhysicsParams, ConservedState
from .grid import ComputationalGrid, MeshCoordinates
from .metrics import SchemeOrder, spatial_metrics
from .schemes import EnergyConservative, EnergyStable, energy_balance
from .mesh import MeshAdaptor, MonitorParams
from .integrator import SimulationState, Solver
from .config import ProblemConfig
from .driver import run, simulate, convergence_study, reference_solution
from .exceptions import (PositivityError, DegenerateMetricError,
                         MeshTanglingError, ConfigError, HaloError)

logging.getLogger(__name__).addHandler(logging.NullHandler())

seterr(all='raise', under='ignore')
