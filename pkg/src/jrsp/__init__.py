"""JRSP: joint remote state preparation of two-qubit equatorial states.

Exact density-matrix simulation of the two-GHZ preparation protocol, the
six standard noise channels, and the closed-form fidelity expressions used
to cross-check the simulation.
"""

from .analytic import ComparisonRow, closed_form_fidelity, compare_with_simulation
from .channels import KrausChannel, NoiseKind, completeness_defect, kraus_set
from .protocol import (
    AssistMode,
    MeasurementBasis,
    OutcomeRecord,
    PhaseSpec,
    alice_basis,
    bob_basis,
    equatorial_state,
    ghz_channel_state,
    jrsp_fidelity,
    recovery_operator,
    run_jrsp,
    success_probability,
)
from .tensor import (
    QuantumState,
    apply_correlated_kraus,
    apply_unitary,
    kron,
    project_two_qubit,
    pure_overlap,
    pure_state,
    validate_state,
)

__all__ = [
    "AssistMode",
    "ComparisonRow",
    "KrausChannel",
    "MeasurementBasis",
    "NoiseKind",
    "OutcomeRecord",
    "PhaseSpec",
    "QuantumState",
    "alice_basis",
    "apply_correlated_kraus",
    "apply_unitary",
    "bob_basis",
    "closed_form_fidelity",
    "compare_with_simulation",
    "completeness_defect",
    "equatorial_state",
    "ghz_channel_state",
    "jrsp_fidelity",
    "kraus_set",
    "kron",
    "project_two_qubit",
    "pure_overlap",
    "pure_state",
    "recovery_operator",
    "run_jrsp",
    "success_probability",
    "validate_state",
]

__version__ = "0.1.0"
