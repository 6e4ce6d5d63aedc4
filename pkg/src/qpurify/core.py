"""Domain types, index conventions, and density-matrix validation.

Composite ancilla+system states use one flat index convention everywhere:
the amplitude of |alpha>|i> (ancilla value alpha, system basis state i)
lives at position alpha * N + i, i.e. the ancilla register is the most
significant block.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

import numpy as np

from .errors import (
    BadRange,
    BadShape,
    GaugeViolation,
    NormFailure,
    NotHermitian,
    NotPSD,
    OutOfRange,
    ShapeMismatch,
    TraceDeviation,
)

#: Largest admissible Hilbert-space dimension N = d**n.
DIM_CAP = 4096


def _frozen_array(values, dtype) -> np.ndarray:
    out = np.array(values, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ToleranceConfig:
    """Numeric tolerances used by validation, the purifiers, and the verifier."""

    eps_herm: float = 1e-10
    eps_trace: float = 1e-10
    eps_psd: float = 1e-9
    eps_recon: float = 1e-10
    eps_norm: float = 1e-10
    eps_pivot: float = 1e-12

    def __post_init__(self):
        for entry in fields(self):
            if getattr(self, entry.name) < 0:
                raise BadRange(f"tolerance {entry.name} must be nonnegative")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class QuditShape:
    """Shape of an n-qudit register: local dimension d, qudit count n, N = d**n."""

    d: int
    n: int
    dim_cap: int = field(default=DIM_CAP, repr=False, compare=False)
    N: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.d < 2:
            raise BadShape(f"local dimension must be >= 2, got d={self.d}")
        if self.n < 1:
            raise BadShape(f"qudit count must be >= 1, got n={self.n}")
        total = self.d ** self.n
        if total > self.dim_cap:
            raise BadShape(f"N = {self.d}**{self.n} = {total} exceeds cap {self.dim_cap}")
        object.__setattr__(self, "N", total)


def flat_index(alpha: int, i: int, N: int, ancilla_dim: int | None = None) -> int:
    """Flat position of |alpha>|i> in the composite state vector (alpha * N + i).

    ``ancilla_dim`` is optional; when given, the ancilla value is range-checked
    against it as well.
    """
    if N < 1:
        raise OutOfRange(f"system dimension must be positive, got {N}")
    if not 0 <= i < N:
        raise OutOfRange(f"system index {i} outside [0, {N})")
    if alpha < 0:
        raise OutOfRange(f"ancilla value {alpha} negative")
    if ancilla_dim is not None and alpha >= ancilla_dim:
        raise OutOfRange(f"ancilla value {alpha} outside [0, {ancilla_dim})")
    return alpha * N + i


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated N x N density matrix (Hermitian, unit trace, PSD) with qudit shape.

    Construct through :func:`validate_density`; the dataclass itself only
    checks dimensions.
    """

    shape: QuditShape
    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen_array(self.entries, np.complex128)
        if entries.shape != (self.shape.N, self.shape.N):
            raise ShapeMismatch(
                f"expected {self.shape.N}x{self.shape.N} entries, got {entries.shape}"
            )
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm state of ancilla (dim M) + system (dim N), flat length M*N."""

    ancilla_dim: int
    system_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.ancilla_dim < 1 or self.system_dim < 1:
            raise ShapeMismatch("register dimensions must be positive")
        amps = _frozen_array(self.amplitudes, np.complex128)
        expected = self.ancilla_dim * self.system_dim
        if amps.shape != (expected,):
            raise ShapeMismatch(f"expected {expected} amplitudes, got {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > DEFAULT_TOL.eps_norm:
            raise NormFailure(f"state norm {norm!r} deviates from 1 beyond tolerance")
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, alpha: int, i: int) -> complex:
        return complex(self.amplitudes[flat_index(alpha, i, self.system_dim, self.ancilla_dim)])


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """Purification coefficients C[alpha][i] in the anti-triangular gauge.

    Invariants enforced at construction: C[alpha][i] == 0 exactly for
    i > N - 1 - alpha, and each anti-diagonal entry C[alpha][N - 1 - alpha]
    is real and nonnegative whenever its row carries weight.
    """

    N: int
    C: np.ndarray

    def __post_init__(self):
        mat = _frozen_array(self.C, np.complex128)
        if mat.shape != (self.N, self.N):
            raise ShapeMismatch(f"expected {self.N}x{self.N} coefficients, got {mat.shape}")
        cols = np.arange(self.N)
        beyond = cols[None, :] > (self.N - 1 - cols[:, None])
        if not np.all(mat[beyond] == 0):
            raise GaugeViolation("entries beyond the anti-diagonal must be exactly zero")
        anti = mat[cols, self.N - 1 - cols]
        weights = np.sum(np.abs(mat) ** 2, axis=1)
        active = weights > DEFAULT_TOL.eps_pivot
        if np.any(anti[active].imag != 0.0) or np.any(anti[active].real < 0.0):
            raise GaugeViolation("anti-diagonal entries must be real and nonnegative")
        object.__setattr__(self, "C", mat)

    def row_weights(self) -> np.ndarray:
        """Squared row norms (the mixture weights of the purification)."""
        return np.sum(np.abs(self.C) ** 2, axis=1)


def validate_density(
    matrix, shape: QuditShape, tol: ToleranceConfig | None = None
) -> DensityMatrix:
    """Check Hermiticity, unit trace, and positivity; return a DensityMatrix.

    Asymmetry within ``eps_herm`` is symmetrized away (file round-trips carry
    last-ulp noise); anything larger raises NotHermitian.
    """
    tol = tol or DEFAULT_TOL
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.shape != (shape.N, shape.N):
        raise ShapeMismatch(f"expected {shape.N}x{shape.N} matrix, got {arr.shape}")
    asym = float(np.max(np.abs(arr - arr.conj().T)))
    if asym > tol.eps_herm:
        raise NotHermitian(f"asymmetry {asym!r} exceeds tolerance {tol.eps_herm!r}")
    sym = (arr + arr.conj().T) / 2.0
    trace = float(np.trace(sym).real)
    if abs(trace - 1.0) > tol.eps_trace:
        raise TraceDeviation(f"trace {trace!r} deviates from 1 beyond {tol.eps_trace!r}")
    from .linalg import hermitian_eigen

    smallest = float(hermitian_eigen(sym).eigenvalues[-1])
    if smallest < -tol.eps_psd:
        raise NotPSD(f"smallest eigenvalue {smallest!r} below -{tol.eps_psd!r}")
    return DensityMatrix(shape, sym)
