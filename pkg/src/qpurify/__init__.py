"""Triangular purification of n-qudit density matrices.

Given a density matrix rho on n qudits (local dimension d, N = d**n), the
package computes a pure state on system + same-size ancilla whose partial
trace over the ancilla reproduces rho, converts it into a parameterized
preparation circuit, and verifies every result by an independent
partial-trace reconstruction.
"""

from .bloch import BlochPoint, bloch_surface, density_from_bloch, mixture_weights
from .circuit import (
    BranchParameters,
    CircuitParameters,
    GateSchedule,
    PhaseGate,
    RotationGate,
    apply_schedule,
    extract_parameters,
    invert_qubit,
    schedule_from_parameters,
    simulate_circuit,
)
from .core import (
    CoefficientMatrix,
    DensityMatrix,
    PureState,
    QuditShape,
    ToleranceConfig,
    flat_index,
    validate_density,
)
from .linalg import (
    EigenDecomposition,
    hermitian_eigen,
    kron,
    max_abs_diff,
    partial_trace_ancilla,
    reference_cholesky,
)
from .purify import (
    VerificationReport,
    cholesky_purify,
    coefficients_to_state,
    gauge_transform,
    qubit_closed_form,
    reconstruct,
    reshuffle_purify,
    spectral_purify,
    verify_purification,
)
from .rng import CounterRng, random_density, random_unitary

__version__ = "0.1.0"

__all__ = [
    "BlochPoint",
    "BranchParameters",
    "CircuitParameters",
    "CoefficientMatrix",
    "CounterRng",
    "DensityMatrix",
    "EigenDecomposition",
    "GateSchedule",
    "PhaseGate",
    "PureState",
    "QuditShape",
    "RotationGate",
    "ToleranceConfig",
    "VerificationReport",
    "apply_schedule",
    "bloch_surface",
    "cholesky_purify",
    "coefficients_to_state",
    "density_from_bloch",
    "extract_parameters",
    "flat_index",
    "gauge_transform",
    "hermitian_eigen",
    "invert_qubit",
    "kron",
    "max_abs_diff",
    "mixture_weights",
    "partial_trace_ancilla",
    "qubit_closed_form",
    "random_density",
    "random_unitary",
    "reconstruct",
    "reference_cholesky",
    "reshuffle_purify",
    "schedule_from_parameters",
    "simulate_circuit",
    "spectral_purify",
    "validate_density",
    "verify_purification",
]
