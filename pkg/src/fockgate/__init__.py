"""Sparse Fock-state simulation of small linear-optical circuits,
with a post-selected two-photon phase/CNOT gate lab on top."""

from .fock import (
    DEFAULT_PHOTON_CAP,
    ModeRegistry,
    PRUNE_THRESHOLD,
    PureState,
    TOLERANCE,
    basis_state,
    single_photon,
    total_photons,
    vacuum,
)
from .elements import (
    Attenuator,
    BeamSplitter,
    Circuit,
    ModeUnitary,
    PhaseShifter,
    PolarizingBS,
    UNITARITY_TOL,
    beam_splitter_matrix,
    embed,
    haar_random_unitary,
    pbs_routing,
)
from .evolution import (
    MAX_PERMANENT_SIZE,
    evolve,
    oracle_evolve,
    permanent,
    transition_amplitude,
)
from .gate import (
    BALANCED_REFLECTIVITY,
    BASIS_LABELS,
    ENCODINGS,
    ErrorBudget,
    EquivalenceRecord,
    EquivalenceReport,
    GATE_REGISTRY,
    GateReport,
    POLARIZATION_LABELS,
    PostSelectionRule,
    QUBIT_REGISTRY,
    ScanRow,
    balanced_reflectivity,
    build_gate_circuit,
    encoded_basis_state,
    error_budget,
    fidelity,
    full_rule,
    gate_unitary,
    ideal_cnot,
    ideal_phase_gate,
    polarization_basis_state,
    postselect,
    practical_rule,
    random_product_state,
    reflectivity_scan,
    rule_equivalence,
    run_gate,
    truth_table,
)

__version__ = "0.1.0"

__all__ = [
    "BALANCED_REFLECTIVITY",
    "BASIS_LABELS",
    "DEFAULT_PHOTON_CAP",
    "ENCODINGS",
    "GATE_REGISTRY",
    "MAX_PERMANENT_SIZE",
    "POLARIZATION_LABELS",
    "PRUNE_THRESHOLD",
    "QUBIT_REGISTRY",
    "TOLERANCE",
    "UNITARITY_TOL",
    "Attenuator",
    "BeamSplitter",
    "Circuit",
    "ErrorBudget",
    "EquivalenceRecord",
    "EquivalenceReport",
    "GateReport",
    "ModeRegistry",
    "ModeUnitary",
    "PhaseShifter",
    "PolarizingBS",
    "PostSelectionRule",
    "PureState",
    "ScanRow",
    "balanced_reflectivity",
    "basis_state",
    "beam_splitter_matrix",
    "build_gate_circuit",
    "embed",
    "encoded_basis_state",
    "error_budget",
    "evolve",
    "fidelity",
    "full_rule",
    "gate_unitary",
    "haar_random_unitary",
    "ideal_cnot",
    "ideal_phase_gate",
    "oracle_evolve",
    "pbs_routing",
    "permanent",
    "polarization_basis_state",
    "postselect",
    "practical_rule",
    "random_product_state",
    "reflectivity_scan",
    "rule_equivalence",
    "run_gate",
    "single_photon",
    "total_photons",
    "transition_amplitude",
    "truth_table",
    "vacuum",
]
