"""Stabilizer (Clifford) circuit simulation on the binary tableau."""

from .circuit import Circuit, CliffordGate, GateKind, parse_circuit, serialize_circuit
from .dense import StateVector, dense_run, fidelity, to_statevector
from .errors import (
    CapacityError,
    CircuitError,
    CircuitFormatError,
    CircuitValidationError,
    InternalError,
    InvalidArgumentError,
    StabError,
)
from .random_clifford import (
    SymplecticSample,
    canonical_key,
    clifford_group_order,
    random_circuit,
    sample_clifford,
    synthesize_circuit,
)
from .tableau import (
    Measurement,
    PauliRow,
    Tableau,
    apply_cnot,
    apply_gate,
    apply_h,
    apply_s,
    execute,
    is_symplectic,
    measure,
    new_identity,
    rowsum,
    run_circuit,
)

__version__ = "0.1.0"
