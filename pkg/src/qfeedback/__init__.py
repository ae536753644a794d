"""Thermodynamics of coherent and measurement-based feedback control
on a system qubit steered through an auxiliary qubit."""

from .closed_form import eff_coh_x, eff_mb_x, eff_z, gamma_x, gamma_z
from .protocol import (
    MeasurementModel,
    ProtocolConfig,
    ProtocolResult,
    StageRecord,
    X_BASIS,
    conditional_states,
    decohere_auxiliary,
    feedback_unitary,
    kraus_elements,
    measurement_unitary,
    run_protocol,
)
from .states import (
    QubitSplitting,
    bloch_from_qubit,
    qubit_from_bloch,
    splitting_from_alpha,
    thermal_alpha,
    validate_state,
)
from .thermo import (
    ThermoLedger,
    binary_entropy,
    efficiency,
    entropy_production,
    mutual_information,
    optimal_reset_heat,
    von_neumann_entropy,
)
from .trajectory import TrajectoryPoint, mutual_information_trace
from .validation import run_validation

__all__ = [
    "MeasurementModel",
    "ProtocolConfig",
    "ProtocolResult",
    "QubitSplitting",
    "StageRecord",
    "ThermoLedger",
    "TrajectoryPoint",
    "X_BASIS",
    "binary_entropy",
    "bloch_from_qubit",
    "conditional_states",
    "decohere_auxiliary",
    "eff_coh_x",
    "eff_mb_x",
    "eff_z",
    "efficiency",
    "entropy_production",
    "feedback_unitary",
    "gamma_x",
    "gamma_z",
    "kraus_elements",
    "measurement_unitary",
    "mutual_information",
    "mutual_information_trace",
    "optimal_reset_heat",
    "qubit_from_bloch",
    "run_protocol",
    "run_validation",
    "splitting_from_alpha",
    "thermal_alpha",
    "validate_state",
    "von_neumann_entropy",
]
