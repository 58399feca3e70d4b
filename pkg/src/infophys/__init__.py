"""Information-theoretic quantities for classical, quantum, relativistic and
black-hole systems, with runnable gedanken experiments."""

from . import blackhole, classical_info, equilibration, quantum_core, relativistic
from .classical_info import Distribution, JointDistribution, ThermoSystem
from .errors import (
    CapacityError,
    ConditioningError,
    InfoPhysError,
    TrajectoryError,
    ValidationError,
)
from .quantum_core import DensityMatrix, StateVector

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConditioningError",
    "DensityMatrix",
    "Distribution",
    "InfoPhysError",
    "JointDistribution",
    "StateVector",
    "ThermoSystem",
    "TrajectoryError",
    "ValidationError",
    "blackhole",
    "classical_info",
    "equilibration",
    "quantum_core",
    "relativistic",
]
