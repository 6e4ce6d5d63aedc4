"""Self-contained complex dense linear algebra.

The Hermitian eigensolver and the reference Cholesky elimination are written
out in full (no LAPACK-backed ``eigh``/``cholesky``) so the numeric streams
are deterministic and the Cholesky oracle stays an independent check on the
purifier rather than a relabelling of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DIM_CAP, DEFAULT_TOL, PureState, ToleranceConfig, _frozen_array
from .errors import NoConvergence, NotPSD, ShapeMismatch, SizeOverflow

#: Sweep cap for the cyclic Jacobi iteration.
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues sorted descending; eigenvector k in column k."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        vals = _frozen_array(self.eigenvalues, np.float64)
        vecs = _frozen_array(self.eigenvectors, np.complex128)
        if vals.ndim != 1 or vecs.shape != (vals.size, vals.size):
            raise ShapeMismatch("eigenvalue/eigenvector dimensions disagree")
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)


def hermitian_eigen(matrix, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    Deterministic for a fixed input: the sweep order is fixed (p < q
    ascending) and the final ordering sorts eigenvalues descending with
    exact ties broken by the first differing eigenvector component
    (larger real part first, then larger imaginary part).
    """
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    if n == 1:
        return EigenDecomposition(np.array([a[0, 0].real]), vecs)

    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return EigenDecomposition(np.zeros(n), vecs)
    stop = 1e-15 * scale
    skip = 0.01 * stop

    converged = False
    for _ in range(max_sweeps):
        off = float(np.max(np.abs(a - np.diag(np.diagonal(a)))))
        if off <= stop:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = a[p, q] / g
                tau = (app - aqq) / (2.0 * g)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = (t * c) * phase.conjugate()
                # a <- U† a U with U embedding [[c, -conj(s)], [s, c]] at (p, q)
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp + np.conj(s) * rq
                a[q, :] = -s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp + s * cq
                a[:, q] = -np.conj(s) * cp + c * cq
                vp, vq = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = c * vp + s * vq
                vecs[:, q] = -np.conj(s) * vp + c * vq
    else:
        converged = float(np.max(np.abs(a - np.diag(np.diagonal(a))))) <= stop
    if not converged:
        raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    values = np.diagonal(a).real.copy()
    # lexsort keys, last row is primary: eigenvalue descending, then the
    # eigenvector components (real before imaginary) descending
    keys = np.empty((2 * n + 1, n))
    row = 0
    for comp in range(n - 1, -1, -1):
        keys[row] = -vecs[comp, :].imag
        keys[row + 1] = -vecs[comp, :].real
        row += 2
    keys[2 * n] = -values
    order = np.lexsort(keys)
    return EigenDecomposition(values[order], vecs[:, order])


def partial_trace_ancilla(state: PureState) -> np.ndarray:
    """Reduced system matrix sigma_ij = sum_alpha a[alpha,i] * conj(a[alpha,j]).

    The result is Hermitian by construction (upper triangle mirrored, real
    diagonal) and PSD because it is a Gram matrix.
    """
    m, n = state.ancilla_dim, state.system_dim
    a = state.amplitudes.reshape(m, n)
    sigma = a.T @ a.conj()
    upper = np.triu_indices(n, 1)
    sigma[upper[1], upper[0]] = sigma[upper].conj()
    sigma[np.diag_indices(n)] = np.diagonal(sigma).real
    return sigma


def kron(a, b, dim_cap: int = DIM_CAP) -> np.ndarray:
    """Tensor product with block structure (a_ij * b); rejects oversized results."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeMismatch("kron expects two matrices")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > dim_cap or cols > dim_cap:
        raise SizeOverflow(f"kron result {rows}x{cols} exceeds cap {dim_cap}")
    return np.kron(a, b)


def reference_cholesky(matrix, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Upper-triangular D with nonnegative real diagonal and D @ D† = matrix.

    Textbook column-by-column elimination run from the bottom-right corner
    (the unique orientation for which an upper-triangular right factor
    exists). When a pivot falls below ``eps_pivot`` the rest of its column
    is zeroed and elimination continues, mirroring the purifier's
    zero-branch rule; a pivot below ``-eps_pivot`` means the input was not
    PSD.
    """
    tol = tol or DEFAULT_TOL
    rho = np.asarray(matrix, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {rho.shape}")
    n = rho.shape[0]
    d = np.zeros((n, n), dtype=np.complex128)
    for k in range(n - 1, -1, -1):
        rest = d[k, k + 1 :]
        head = float(rho[k, k].real - np.sum(np.abs(rest) ** 2))
        if head < -tol.eps_pivot:
            raise NotPSD(f"pivot {head!r} at index {k} below -{tol.eps_pivot!r}")
        pivot = math.sqrt(max(head, 0.0))
        d[k, k] = pivot
        if k and pivot > tol.eps_pivot:
            d[:k, k] = (rho[:k, k] - d[:k, k + 1 :] @ rest.conj()) / pivot
    return d


def max_abs_diff(a, b) -> float:
    """Largest entrywise absolute difference between two equal-shape matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))
