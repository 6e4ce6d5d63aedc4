"""JSON and CSV file formats.

Serialization is canonical so golden files are byte-stable: fixed key
order, compact separators, one trailing newline, and floats rendered as
the shortest decimal that round-trips to the same IEEE double (Python's
repr). Complex numbers are stored as [re, im] pairs.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .bloch import bloch_surface, grid_angles
from .circuit import (
    BranchParameters,
    CircuitParameters,
    GateSchedule,
    PhaseGate,
    RotationGate,
)
from .core import (
    DensityMatrix,
    PureState,
    QuditShape,
    ToleranceConfig,
    validate_density,
)


def _dump(payload) -> str:
    return json.dumps(payload, separators=(",", ":"), allow_nan=False) + "\n"


def _pair(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def _complex_matrix(rows) -> list[list[list[float]]]:
    return [[_pair(complex(v)) for v in row] for row in rows]


def _parse_complex_matrix(data, rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=np.complex128)
    if not isinstance(data, list) or len(data) != rows:
        raise ValueError(f"expected {rows} matrix rows")
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError(f"row {r}: expected {cols} entries")
        for c, pair in enumerate(row):
            out[r, c] = _parse_complex(pair)
    return out


def _parse_complex(pair) -> complex:
    if not isinstance(pair, list) or len(pair) != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return complex(float(pair[0]), float(pair[1]))


def dump_density(rho: DensityMatrix) -> str:
    return _dump(
        {
            "d": rho.shape.d,
            "n": rho.shape.n,
            "matrix": _complex_matrix(rho.entries),
        }
    )


def load_density(text: str, tol: ToleranceConfig | None = None) -> DensityMatrix:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("matrix file must be a JSON object")
    shape = QuditShape(int(data["d"]), int(data["n"]))
    matrix = _parse_complex_matrix(data["matrix"], shape.N, shape.N)
    return validate_density(matrix, shape, tol)


def dump_state(state: PureState) -> str:
    return _dump(
        {
            "ancilla_dim": state.ancilla_dim,
            "system_dim": state.system_dim,
            "amplitudes": [_pair(complex(a)) for a in state.amplitudes],
        }
    )


def load_state(text: str) -> PureState:
    data = json.loads(text)
    m = int(data["ancilla_dim"])
    n = int(data["system_dim"])
    amps = np.array([_parse_complex(p) for p in data["amplitudes"]], dtype=np.complex128)
    return PureState(m, n, amps)


def dump_coefficients(matrix) -> str:
    arr = np.asarray(matrix, dtype=np.complex128)
    return _dump({"N": arr.shape[0], "C": _complex_matrix(arr)})


def _gate_record(gate) -> dict:
    if isinstance(gate, RotationGate):
        return {
            "gate": "rotation",
            "control_value": gate.control_value,
            "subspace": [gate.subspace[0], gate.subspace[1]],
            "value": float(gate.value),
        }
    return {
        "gate": "phase",
        "control_value": gate.control_value,
        "basis": gate.basis,
        "value": float(gate.value),
    }


def _parse_gate(record) -> RotationGate | PhaseGate:
    kind = record["gate"]
    control = record["control_value"]
    control = None if control is None else int(control)
    value = float(record["value"])
    if kind == "rotation":
        a, b = record["subspace"]
        return RotationGate(control, (int(a), int(b)), value)
    if kind == "phase":
        return PhaseGate(control, int(record["basis"]), value)
    raise ValueError(f"unknown gate kind {kind!r}")


def dump_circuit(shape: QuditShape, params: CircuitParameters, schedule: GateSchedule) -> str:
    return _dump(
        {
            "N": params.N,
            "d": shape.d,
            "n": shape.n,
            "parameters": {
                "weight_angles": [float(a) for a in params.weight_angles],
                "branches": [
                    {
                        "dim": b.dim,
                        "angles": [float(a) for a in b.angles],
                        "phases": [float(p) for p in b.phases],
                    }
                    for b in params.branches
                ],
            },
            "schedule": [_gate_record(g) for g in schedule.gates],
        }
    )


def load_circuit(text: str) -> tuple[QuditShape, CircuitParameters, GateSchedule]:
    data = json.loads(text)
    shape = QuditShape(int(data["d"]), int(data["n"]))
    n = int(data["N"])
    if n != shape.N:
        raise ValueError(f"declared N={n} disagrees with d**n={shape.N}")
    block = data["parameters"]
    branches = tuple(
        BranchParameters(
            int(b["dim"]),
            np.array([float(a) for a in b["angles"]]),
            np.array([float(p) for p in b["phases"]]),
        )
        for b in block["branches"]
    )
    params = CircuitParameters(
        n, np.array([float(a) for a in block["weight_angles"]]), branches
    )
    schedule = GateSchedule(n, n, tuple(_parse_gate(g) for g in data["schedule"]))
    return shape, params, schedule


def bloch_csv(alphas, n_theta: int, n_phi: int) -> str:
    """CSV of surface points, one block per alpha: alpha,theta,phi,X,Y,Z."""
    lines = ["alpha,theta,phi,X,Y,Z"]
    thetas, phis = grid_angles(n_theta, n_phi)
    for alpha in alphas:
        alpha = float(alpha)
        points = iter(bloch_surface(alpha, (n_theta, n_phi)))
        for theta in thetas:
            for phi in phis:
                p = next(points)
                lines.append(
                    f"{alpha!r},{float(theta)!r},{float(phi)!r},{p.x!r},{p.y!r},{p.z!r}"
                )
    return "\n".join(lines) + "\n"


def sweep_alphas(count: int) -> list[float]:
    """``count`` mixing angles spanning [0, pi/2] uniformly."""
    if count < 1:
        raise ValueError(f"alpha count must be >= 1, got {count}")
    if count == 1:
        return [0.0]
    step = (math.pi / 2.0) / (count - 1)
    return [i * step for i in range(count)]
