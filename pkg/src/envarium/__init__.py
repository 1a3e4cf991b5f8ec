"""Statevector toolkit for entanglement-assisted invariance (envariance) experiments."""

from .bipartite import (
    Bipartition,
    SchmidtDecomposition,
    partial_trace_over_e,
    partial_trace_over_s,
    reshape_to_matrix,
    schmidt_decompose,
)
from .circuit import Circuit, CircuitOp, execute, parse_circuit, render_circuit
from .envariance import (
    EnvarianceReport,
    check_envariance,
    construct_assisting_unitary,
    verify_pair,
)
from .errors import (
    EnvariumError,
    NotEnvariantError,
    ParseError,
    QubitIndexError,
    SizeError,
    UnknownExperimentError,
    ValidationError,
)
from .experiments import EXPERIMENTS, Experiment, builtin_experiment, get_experiment
from .noise import NoiseParams, run_noisy, sweep_fidelity
from .sampling import OutcomeHistogram, bhattacharyya, exact_distribution, group_outcomes, sample
from .statevector import (
    GATES,
    StateVector,
    apply_cnot,
    apply_single_qubit_gate,
    apply_unitary_on_subset,
    gate_matrix,
    global_phase_distance,
    new_ground_state,
)

__version__ = "0.1.0"
