"""Measurement-assisted quantum state transfer between two qubits coupled by
a lossy resonator: closed-form and master-equation engines, partial
measurement and reversal channels, protocol orchestration and parameter
sweeps."""

from .analytic import AnalyticInputs, analytic_rho, nojump_amplitudes, transfer_amplitudes
from .core import (
    DIM,
    GROUND,
    PHOTON,
    QUBIT1,
    QUBIT2,
    SIGMA_Z1,
    SIGMA_Z2,
    CollapseTerm,
    QubitAmplitudes,
    SystemParams,
    collapse_operators,
    embed_qubit2_op,
    hamiltonian,
    hermiticity_defect,
    initial_state,
    physicality_violations,
    smallest_eigenvalue,
    target_state,
)
from .lindblad import (
    IntegratorConfig,
    StepSizeUnderflow,
    Trajectory,
    integrate,
    lindblad_rhs,
)
from .measurement import (
    DegenerateReversal,
    PostSelectedState,
    ZeroProbability,
    apply_measurement_qubit1,
    apply_reversal_qubit2,
    m0_operator,
    m1_operator,
    reversal_operator,
)
from .optimize import golden_section_max, grid_then_golden_max
from .protocol import (
    ProtocolOutcome,
    ProtocolSpec,
    fidelity_to_target,
    full_transfer_time,
    nojump_protocol_oracle,
    optimize_q,
    q_formula,
    run_protocol,
)
from .sweeps import (
    AxisGrid,
    SweepResult,
    SweepSpec,
    decay_sweep,
    dephasing_sweep,
    fig_decay_spec,
    fig_dephasing_spec,
    fig_time_spec,
    max_fidelity_over_time,
    time_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticInputs",
    "AxisGrid",
    "CollapseTerm",
    "DIM",
    "DegenerateReversal",
    "GROUND",
    "IntegratorConfig",
    "PHOTON",
    "PostSelectedState",
    "ProtocolOutcome",
    "ProtocolSpec",
    "QUBIT1",
    "QUBIT2",
    "QubitAmplitudes",
    "SIGMA_Z1",
    "SIGMA_Z2",
    "StepSizeUnderflow",
    "SweepResult",
    "SweepSpec",
    "SystemParams",
    "Trajectory",
    "ZeroProbability",
    "analytic_rho",
    "apply_measurement_qubit1",
    "apply_reversal_qubit2",
    "collapse_operators",
    "decay_sweep",
    "dephasing_sweep",
    "embed_qubit2_op",
    "fidelity_to_target",
    "fig_decay_spec",
    "fig_dephasing_spec",
    "fig_time_spec",
    "full_transfer_time",
    "golden_section_max",
    "grid_then_golden_max",
    "hamiltonian",
    "hermiticity_defect",
    "initial_state",
    "integrate",
    "lindblad_rhs",
    "m0_operator",
    "m1_operator",
    "max_fidelity_over_time",
    "nojump_amplitudes",
    "nojump_protocol_oracle",
    "optimize_q",
    "physicality_violations",
    "q_formula",
    "reversal_operator",
    "run_protocol",
    "smallest_eigenvalue",
    "target_state",
    "time_sweep",
    "transfer_amplitudes",
]
