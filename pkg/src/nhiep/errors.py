"""Exception hierarchy shared by all nhiep modules.

Everything raised on bad input or failed numerics derives from NhiepError so
callers (the CLI in particular) can catch one type and map it to an exit code.
"""


class NhiepError(Exception):
    """Base class for all errors raised by this package."""


class NonSquareError(NhiepError):
    """Matrix input is not square."""


class NotNearHermitianError(NhiepError):
    """Raw matrix is too far from its own conjugate transpose to symmetrize."""


class NoConvergenceError(NhiepError):
    """Eigensolver failed to reach the off-diagonal tolerance in budget."""


class RankDeficientError(NhiepError):
    """Orthonormalization hit a numerically dependent column."""


class LengthMismatchError(NhiepError):
    """Two spectra (or a spectrum and a matrix) disagree on dimension."""


class NonRealSpectrumError(NhiepError):
    """Target spectrum contains a non-real value; only real targets admit a
    Hermitian solution, so these are rejected up front."""


class NonFiniteSpectrumError(NhiepError):
    """Spectrum contains NaN or infinity."""


class NonSquareImageError(NhiepError):
    """Image operation that needs a square pixel grid got a rectangle."""


class DimensionMismatchError(NhiepError):
    """Image halves or carried spectra disagree on size."""


class MatrixFormatError(NhiepError):
    """Matrix text file could not be parsed."""


class SpectrumFormatError(NhiepError):
    """Spectrum text file could not be parsed."""


class PgmFormatError(NhiepError):
    """PGM image file is malformed or uses an unsupported variant."""
