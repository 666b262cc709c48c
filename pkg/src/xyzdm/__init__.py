"""Two-qubit XYZ Heisenberg model with spin-orbit coupling in an inhomogeneous field.

Thermal states, concurrence, critical parameters and entanglement
teleportation, each in closed form and checked against numeric oracles.
"""

from .entanglement import (
    RegionLabel,
    classify_region,
    critical_b,
    critical_dm,
    critical_temperatures,
    entanglement_of_formation,
    ground_state_concurrence,
    thermal_concurrence,
    thermal_lambdas,
    wootters_concurrence,
)
from .model import (
    DomainError,
    ModelParams,
    ZeroTemperatureError,
    build_hamiltonian,
    ground_state_density,
    spectral_data,
)
from .sweep import RECIPES, Axis, SweepSpec, emit_csv, run_sweep
from .teleportation import (
    InputState,
    average_fidelity,
    fidelity,
    fidelity_closed,
    output_concurrence_closed,
    teleport,
)
from .thermal import XState, gibbs_closed_form, gibbs_numeric

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "DomainError",
    "InputState",
    "ModelParams",
    "RECIPES",
    "RegionLabel",
    "SweepSpec",
    "XState",
    "ZeroTemperatureError",
    "average_fidelity",
    "build_hamiltonian",
    "classify_region",
    "critical_b",
    "critical_dm",
    "critical_temperatures",
    "emit_csv",
    "entanglement_of_formation",
    "fidelity",
    "fidelity_closed",
    "gibbs_closed_form",
    "gibbs_numeric",
    "ground_state_concurrence",
    "ground_state_density",
    "output_concurrence_closed",
    "run_sweep",
    "spectral_data",
    "teleport",
    "thermal_concurrence",
    "thermal_lambdas",
    "wootters_concurrence",
]
