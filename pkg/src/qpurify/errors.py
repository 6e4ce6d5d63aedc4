"""Exception types shared across the package."""


class QPurifyError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(QPurifyError):
    """Array dimensions disagree with the declared qudit shape."""


class BadShape(QPurifyError):
    """Qudit shape parameters are invalid or exceed the dimension cap."""


class OutOfRange(QPurifyError):
    """An index lies outside its admissible range."""


class NotHermitian(QPurifyError):
    """Matrix asymmetry exceeds the Hermiticity tolerance."""


class TraceDeviation(QPurifyError):
    """Matrix trace differs from one beyond tolerance."""


class NotPSD(QPurifyError):
    """Matrix has an eigenvalue (or elimination pivot) below the PSD tolerance."""


class NormFailure(QPurifyError):
    """Vector norm differs from one beyond tolerance."""


class NotUnitary(QPurifyError):
    """Matrix fails the unitarity check."""


class NoConvergence(QPurifyError):
    """Iterative eigensolver hit its sweep cap without converging."""


class SizeOverflow(QPurifyError):
    """Operation would produce a matrix beyond the dimension cap."""


class ReconstructionFailure(QPurifyError):
    """Purification coefficients do not reproduce the density matrix."""


class GaugeViolation(QPurifyError):
    """Coefficient matrix breaks the anti-triangular gauge pattern."""


class DegenerateBranch(QPurifyError):
    """Branch peeling hit a vanishing cosine with amplitude left over."""


class BadRange(QPurifyError):
    """Scalar argument lies outside its admissible interval."""


class OutsideBall(QPurifyError):
    """Bloch coordinates lie outside the unit ball."""
