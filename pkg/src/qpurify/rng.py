"""Deterministic random-state generation on a counter-based generator.

Golden test fixtures must reproduce bit-for-bit across platforms and
library versions, so randomness comes from an in-repo SplitMix64 stream
rather than a library generator whose bit stream may change:

* word(seed, i) = mix64(seed + (i + 1) * 0x9E3779B97F4A7C15), where mix64
  is the SplitMix64 finalizer (xor-shift 30 / multiply 0xBF58476D1CE4E5B9 /
  xor-shift 27 / multiply 0x94D049BB133111EB / xor-shift 31), all mod 2^64.
* uniforms take the top 53 bits: u_i = (word >> 11 + 1) * 2^-53 in (0, 1].
* normal pairs come from the Box-Muller transform of consecutive uniforms.
* a complex Ginibre matrix is filled row-major, one normal pair (real,
  imaginary) per entry; the density matrix is G G^dagger / Tr(G G^dagger).

Everything downstream of the integer stream is plain IEEE-754 double
arithmetic, so same seed means the same matrix everywhere up to libm
rounding of log/cos/sin.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DensityMatrix, QuditShape, ToleranceConfig, validate_density
from .errors import BadShape

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TO_UNIT = 2.0 ** -53


def word(seed: int, index: int) -> int:
    """The index-th 64-bit word of the stream for ``seed`` (pure function)."""
    x = (seed + (index + 1) * _GAMMA) & _MASK64
    x ^= x >> 30
    x = (x * _MIX1) & _MASK64
    x ^= x >> 27
    x = (x * _MIX2) & _MASK64
    x ^= x >> 31
    return x


class CounterRng:
    """Stateful cursor over the counter stream of one seed."""

    def __init__(self, seed: int):
        self._seed = seed & _MASK64
        self._index = 0

    def next_u64(self) -> int:
        value = word(self._seed, self._index)
        self._index += 1
        return value

    def uniform(self) -> float:
        """Uniform double in (0, 1] (never 0, safe under log)."""
        return ((self.next_u64() >> 11) + 1) * _TO_UNIT

    def normal_pair(self) -> tuple[float, float]:
        u1 = self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        angle = 2.0 * math.pi * u2
        return radius * math.cos(angle), radius * math.sin(angle)

    def standard_normal(self, count: int) -> np.ndarray:
        out = np.empty(count)
        for i in range(0, count - 1, 2):
            out[i], out[i + 1] = self.normal_pair()
        if count % 2:
            out[-1] = self.normal_pair()[0]
        return out

    def complex_normal_matrix(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=np.complex128)
        for r in range(rows):
            for c in range(cols):
                re, im = self.normal_pair()
                out[r, c] = complex(re, im)
        return out


def random_density(
    d: int,
    n: int,
    seed: int,
    rank: int | None = None,
    tol: ToleranceConfig | None = None,
) -> DensityMatrix:
    """Seeded Ginibre-ensemble density matrix: G G^dagger normalized to unit trace.

    ``rank`` limits G to N x rank columns (rank 1 gives a pure state);
    None draws the full square matrix.
    """
    shape = QuditShape(d, n)
    columns = shape.N if rank is None else rank
    if not 1 <= columns <= shape.N:
        raise BadShape(f"rank must lie in [1, {shape.N}], got {rank}")
    g = CounterRng(seed).complex_normal_matrix(shape.N, columns)
    gram = g @ g.conj().T
    gram = (gram + gram.conj().T) / 2.0
    gram /= float(np.trace(gram).real)
    return validate_density(gram, shape, tol)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-ish unitary: QR of a complex Ginibre draw, R-diagonal phases fixed."""
    g = CounterRng(seed).complex_normal_matrix(dim, dim)
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))
