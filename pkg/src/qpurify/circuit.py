"""Circuit parameterization of a purification and its simulator.

A coefficient matrix factors into N^2 - 1 real parameters:

* N - 1 weight angles. A chain of rotations on the ancilla register turns
  |0> into sum_k sqrt(w_k) |k>, where w_k is the squared norm of
  coefficient row k. The first angle peels off w_{N-1}, the next w_{N-2}
  within the remaining mass, and so on.
* Per branch k (a normalized coefficient row, a pure state on the first
  m = N - k basis states), m - 1 angles and m - 1 phases. Rotations peel
  amplitudes from the last (real, nonnegative by the gauge) down to the
  first; each stripped amplitude's argument becomes a phase.

Simulation offers two modes that must agree: the direct product formulas,
and a gate schedule of two-level rotations and phase shifts applied to
|0...0>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CoefficientMatrix,
    DEFAULT_TOL,
    PureState,
    ToleranceConfig,
    _frozen_array,
)
from .errors import BadRange, DegenerateBranch, OutOfRange, ShapeMismatch

TWO_PI = 2.0 * math.pi
HALF_PI = math.pi / 2.0

#: Leftover amplitude above this scale when a branch cosine underflows
#: signals a malformed (non-unit or off-pattern) coefficient row.
_LEFTOVER_LIMIT = 1e-8


def _wrap_phase(value: float) -> float:
    out = float(np.mod(value, TWO_PI))
    return 0.0 if out >= TWO_PI else out


def _check_angles(angles: np.ndarray, label: str) -> None:
    if angles.size and (np.min(angles) < 0.0 or np.max(angles) > HALF_PI):
        raise BadRange(f"{label} must lie in [0, pi/2]")


@dataclass(frozen=True, eq=False)
class BranchParameters:
    """Angles and phases preparing one branch state of dimension ``dim``."""

    dim: int
    angles: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        angles = _frozen_array(self.angles, np.float64)
        phases = _frozen_array(self.phases, np.float64)
        expected = max(self.dim - 1, 0)
        if angles.shape != (expected,) or phases.shape != (expected,):
            raise ShapeMismatch(
                f"branch of dimension {self.dim} needs {expected} angles and phases"
            )
        _check_angles(angles, "branch angles")
        if phases.size and (np.min(phases) < 0.0 or np.max(phases) >= TWO_PI):
            raise BadRange("phases must lie in [0, 2*pi)")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "phases", phases)


@dataclass(frozen=True, eq=False)
class CircuitParameters:
    """Weight angles plus one branch record per ancilla value; N^2 - 1 reals."""

    N: int
    weight_angles: np.ndarray
    branches: tuple[BranchParameters, ...]

    def __post_init__(self):
        weights = _frozen_array(self.weight_angles, np.float64)
        if weights.shape != (self.N - 1,):
            raise ShapeMismatch(f"expected {self.N - 1} weight angles, got {weights.shape}")
        _check_angles(weights, "weight angles")
        branches = tuple(self.branches)
        if len(branches) != self.N:
            raise ShapeMismatch(f"expected {self.N} branches, got {len(branches)}")
        for k, branch in enumerate(branches):
            if branch.dim != self.N - k:
                raise ShapeMismatch(f"branch {k} must have dimension {self.N - k}")
        object.__setattr__(self, "weight_angles", weights)
        object.__setattr__(self, "branches", branches)

    @property
    def parameter_count(self) -> int:
        return int(self.weight_angles.size) + sum(
            b.angles.size + b.phases.size for b in self.branches
        )


@dataclass(frozen=True)
class RotationGate:
    """Two-level rotation [[cos, -sin], [sin, cos]] on a basis-pair subspace.

    ``control_value`` None: acts on the ancilla register. Otherwise: acts
    on the system register inside the block where the ancilla equals the
    control value.
    """

    control_value: int | None
    subspace: tuple[int, int]
    value: float


@dataclass(frozen=True)
class PhaseGate:
    """Phase shift on a single basis line, stored with the sign convention
    diag(1, e^{-i phi}): ``value`` holds -phi and the tagged line picks up
    the factor e^{-i value} = e^{i phi}, which keeps each branch's last
    amplitude real."""

    control_value: int | None
    basis: int
    value: float


@dataclass(frozen=True, eq=False)
class GateSchedule:
    """Ordered gates whose application to |0...0> prepares the purification."""

    ancilla_dim: int
    system_dim: int
    gates: tuple[RotationGate | PhaseGate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            ctrl = gate.control_value
            if ctrl is not None and not 0 <= ctrl < self.ancilla_dim:
                raise OutOfRange(f"control value {ctrl} outside ancilla register")
            if isinstance(gate, RotationGate):
                a, b = gate.subspace
                dim = self.system_dim if ctrl is not None else self.ancilla_dim
                if not (0 <= a < b < dim):
                    raise OutOfRange(f"rotation subspace {gate.subspace} invalid for dim {dim}")
            else:
                dim = self.system_dim if ctrl is not None else self.ancilla_dim
                if not 0 <= gate.basis < dim:
                    raise OutOfRange(f"phase basis {gate.basis} outside register of dim {dim}")


def _extract_weight_angles(weights: np.ndarray) -> np.ndarray:
    n = weights.size
    cumulative = np.cumsum(weights)
    angles = np.zeros(n - 1)
    for step in range(1, n):
        k = n - step
        remaining = float(cumulative[k])
        if remaining > 0.0:
            ratio = min(float(weights[k]) / remaining, 1.0)
            angles[step - 1] = math.asin(math.sqrt(ratio))
    return angles


def _extract_branch(row: np.ndarray, dim: int, eps_pivot: float) -> tuple[np.ndarray, np.ndarray]:
    angles = np.zeros(max(dim - 1, 0))
    phases = np.zeros(max(dim - 1, 0))
    if dim <= 1:
        return angles, phases
    work = np.array(row[:dim], dtype=np.complex128)
    for step in range(1, dim):
        j = dim - step
        magnitude = min(abs(complex(work[j])), 1.0)
        theta = math.asin(magnitude)
        angles[step - 1] = theta
        if j < dim - 1:
            phases[j] = _wrap_phase(cmath.phase(complex(work[j])))
        cos_theta = math.cos(theta)
        if cos_theta > eps_pivot:
            work[:j] /= cos_theta
        else:
            if float(np.max(np.abs(work[:j]))) > _LEFTOVER_LIMIT:
                raise DegenerateBranch(
                    "branch cosine underflowed with nonzero amplitudes remaining"
                )
            return angles, phases
    phases[0] = _wrap_phase(cmath.phase(complex(work[0])))
    return angles, phases


def extract_parameters(
    coeffs: CoefficientMatrix, tol: ToleranceConfig | None = None
) -> CircuitParameters:
    """Invert a coefficient matrix into weight angles, branch angles, phases.

    Rows whose weight does not exceed ``eps_pivot`` contribute all-zero
    branch parameters (their content is arbitrary; zero keeps the result
    deterministic).
    """
    tol = tol or DEFAULT_TOL
    n = coeffs.N
    weights = coeffs.row_weights()
    weight_angles = _extract_weight_angles(weights)
    branches = []
    for k in range(n):
        dim = n - k
        if weights[k] > tol.eps_pivot:
            row = coeffs.C[k, :dim] / math.sqrt(float(weights[k]))
            angles, phases = _extract_branch(row, dim, tol.eps_pivot)
        else:
            angles = np.zeros(max(dim - 1, 0))
            phases = np.zeros(max(dim - 1, 0))
        branches.append(BranchParameters(dim, angles, phases))
    return CircuitParameters(n, weight_angles, tuple(branches))


def _weight_amplitudes(weight_angles: np.ndarray, n: int) -> np.ndarray:
    amp = np.zeros(n)
    prefix = 1.0
    for step in range(1, n):
        angle = float(weight_angles[step - 1])
        amp[n - step] = prefix * math.sin(angle)
        prefix *= math.cos(angle)
    amp[0] = prefix
    return amp


def _branch_amplitudes(branch: BranchParameters) -> np.ndarray:
    m = branch.dim
    amp = np.zeros(m, dtype=np.complex128)
    if m == 1:
        amp[0] = 1.0
        return amp
    prefix = 1.0
    for step in range(1, m):
        j = m - step
        theta = float(branch.angles[step - 1])
        value = prefix * math.sin(theta)
        if j < m - 1:
            amp[j] = value * cmath.exp(1j * float(branch.phases[j]))
        else:
            amp[j] = value
        prefix *= math.cos(theta)
    amp[0] = prefix * cmath.exp(1j * float(branch.phases[0]))
    return amp


def simulate_circuit(params: CircuitParameters, mode: str = "product") -> PureState:
    """Purification state prepared by the parameterized circuit.

    ``mode="product"`` evaluates the closed-form products directly:
    amplitude[k*N + i] = (weight chain factor k) * (branch-k amplitude i).
    ``mode="gates"`` builds the gate schedule and applies it to |0...0>.
    Both agree to within a few ulp.
    """
    if mode == "gates":
        return apply_schedule(schedule_from_parameters(params))
    if mode != "product":
        raise BadRange(f"unknown simulation mode {mode!r}")
    n = params.N
    weight_amp = _weight_amplitudes(params.weight_angles, n)
    vec = np.zeros(n * n, dtype=np.complex128)
    for k, branch in enumerate(params.branches):
        if weight_amp[k] == 0.0:
            continue
        vec[k * n : k * n + branch.dim] = weight_amp[k] * _branch_amplitudes(branch)
    return PureState(n, n, vec)


def schedule_from_parameters(params: CircuitParameters) -> GateSchedule:
    """Gate realization: ancilla weight chain, then per-branch controlled gates.

    Each chain is a column-preparation sequence of rotations on subspace
    pairs (0, t) with t descending; branch gates carry the ancilla value
    they are controlled on. One gate per parameter, N^2 - 1 in total.
    """
    n = params.N
    gates: list[RotationGate | PhaseGate] = []
    for step in range(1, n):
        gates.append(RotationGate(None, (0, n - step), float(params.weight_angles[step - 1])))
    for k, branch in enumerate(params.branches):
        m = branch.dim
        for step in range(1, m):
            gates.append(RotationGate(k, (0, m - step), float(branch.angles[step - 1])))
        for basis in range(m - 1):
            gates.append(PhaseGate(k, basis, -float(branch.phases[basis])))
    return GateSchedule(n, n, tuple(gates))


def apply_schedule(schedule: GateSchedule) -> PureState:
    """Apply the gates in order to |0...0> and return the resulting state."""
    m, n = schedule.ancilla_dim, schedule.system_dim
    vec = np.zeros(m * n, dtype=np.complex128)
    vec[0] = 1.0
    system = np.arange(n)
    for gate in schedule.gates:
        ctrl = gate.control_value
        if isinstance(gate, RotationGate):
            a, b = gate.subspace
            if ctrl is None:
                ia, ib = a * n + system, b * n + system
            else:
                ia = np.array([ctrl * n + a])
                ib = np.array([ctrl * n + b])
            c = math.cos(gate.value)
            s = math.sin(gate.value)
            xa, xb = vec[ia].copy(), vec[ib].copy()
            vec[ia] = c * xa - s * xb
            vec[ib] = s * xa + c * xb
        else:
            factor = cmath.exp(-1j * gate.value)
            if ctrl is None:
                vec[gate.basis * n + system] *= factor
            else:
                vec[ctrl * n + gate.basis] *= factor
    return PureState(m, n, vec)


def invert_qubit(params: CircuitParameters) -> CoefficientMatrix:
    """Closed inversion for N=2: C00 = cos(a)cos(t)e^{i p}, C01 = cos(a)sin(t),
    C10 = sin(a), C11 = 0."""
    if params.N != 2:
        raise ShapeMismatch(f"qubit inversion requires N=2, got N={params.N}")
    alpha = float(params.weight_angles[0])
    theta = float(params.branches[0].angles[0])
    phi = float(params.branches[0].phases[0])
    c = np.zeros((2, 2), dtype=np.complex128)
    c[0, 0] = math.cos(alpha) * math.cos(theta) * cmath.exp(1j * phi)
    c[0, 1] = math.cos(alpha) * math.sin(theta)
    c[1, 0] = math.sin(alpha)
    return CoefficientMatrix(2, c)
