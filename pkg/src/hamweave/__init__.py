"""Universal gates from switching between two fixed 2-local Hamiltonians.

The package compiles {H, T, CNOT} circuits on a qubit line into schedules
that alternate between just two always-available Hamiltonians, simulates
those schedules exactly through their commuting local factors, bounds the
compilation error analytically, and searches for the phase coincidences the
construction rests on.
"""

from .qcore import (
    DenseUnitary,
    DimensionError,
    StateVector,
    apply_single_qubit,
    apply_two_qubit_diagonal,
    dense_expm_hermitian,
    fidelity_phase_invariant,
    max_dense_qubits,
    spectral_distance_up_to_phase,
)
from .hamiltonians import (
    FactorizedEvolution,
    HamiltonianSpec,
    dense_h1,
    dense_h2,
    evolve_h1,
    evolve_h2,
)
from .simulator import Schedule, Segment, normalize, run_schedule, schedule_unitary
from .compiler import (
    Circuit,
    CompilerConfig,
    ErrorBudget,
    Gate,
    circuit_unitary,
    compile_circuit,
    error_bound,
    route_circuit,
    schedule_cnot,
    schedule_hadamard,
    schedule_t_gate,
    schedule_zz,
    standard_coefficients,
)
from .search import (
    CoincidenceProblem,
    CoincidenceResult,
    continued_fraction_convergents,
    convergent_times,
    phase_error,
    scan_coincidence,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CoincidenceProblem",
    "CoincidenceResult",
    "CompilerConfig",
    "DenseUnitary",
    "DimensionError",
    "ErrorBudget",
    "FactorizedEvolution",
    "Gate",
    "HamiltonianSpec",
    "Schedule",
    "Segment",
    "StateVector",
    "apply_single_qubit",
    "apply_two_qubit_diagonal",
    "circuit_unitary",
    "compile_circuit",
    "continued_fraction_convergents",
    "convergent_times",
    "dense_expm_hermitian",
    "dense_h1",
    "dense_h2",
    "error_bound",
    "evolve_h1",
    "evolve_h2",
    "fidelity_phase_invariant",
    "max_dense_qubits",
    "normalize",
    "phase_error",
    "route_circuit",
    "run_schedule",
    "scan_coincidence",
    "schedule_cnot",
    "schedule_hadamard",
    "schedule_t_gate",
    "schedule_unitary",
    "schedule_zz",
    "spectral_distance_up_to_phase",
    "standard_coefficients",
]
