"""Numerical reconstruction of two no-go arguments for the general impossible operation.

``qcore`` holds the linear algebra, ``machine`` the hypothetical device and
its legal linear extension, ``nogo`` the signalling and entanglement
scenarios, ``cli`` the command-line front end.
"""

from .machine import (
    GramSpec,
    Machine,
    MachineError,
    cloning_machine,
    constant_machine,
    linear_extension,
    parse_machine_spec,
    postulate_deviation,
    projected_machine,
    realize_from_gram,
)
from .nogo import (
    AliceBasis,
    DegenerateBoundError,
    EntanglementReport,
    SignallingReport,
    Stage,
    alice_reduced,
    apply_general_operation,
    bob_mixture,
    build_shared_state,
    build_singlet,
    closed_form_lambdas,
    cos_theta_bound,
    monotonicity_test,
    signalling_test,
)
from .qcore import (
    DensityMatrix,
    QuantumError,
    QubitBasis,
    StateVector,
    eigvals_hermitian,
    entanglement_entropy,
    ket,
    partial_trace,
    tensor,
    trace_distance,
)

__version__ = "0.1.0"
