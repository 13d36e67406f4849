"""Hermitian matrix containers, eigendecomposition, and text formats.

The central type is HermitianMatrix, which holds entries that are exactly
equal to their own conjugate transpose (bit for bit).  Raw data that is only
Hermitian up to rounding goes through symmetrize() first.  Eigendecomposition
is a cyclic Jacobi iteration (see nhiep._jacobi_py) with eigenvalues returned
in ascending order and eigenvector phases pinned so runs are reproducible.
"""
from dataclasses import dataclass

import numpy as np

from nhiep import _backend
from nhiep.errors import (
    LengthMismatchError,
    MatrixFormatError,
    NoConvergenceError,
    NonFiniteSpectrumError,
    NonRealSpectrumError,
    NonSquareError,
    NotNearHermitianError,
    RankDeficientError,
    SpectrumFormatError,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "HermitianMatrix",
    "Spectrum",
    "SortedSpectralDecomposition",
    "as_hermitian",
    "as_spectrum",
    "symmetrize",
    "sorted_eig",
    "eigenvalues_of",
    "gram_schmidt_orthonormalize",
    "operator_two_norm",
    "parse_matrix",
    "format_matrix",
    "parse_spectrum",
    "format_spectrum",
]


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances used across the package.

    Most fields are scale coefficients, multiplied by a problem-size factor
    at the point of use (noted per field); offdiag and rank are used as is.

    herm_in    symmetrize gate, times max(1, max-abs of the raw input)
    orth       orthonormality checks, times n
    resid      reconstruction checks, times n
    rank       absolute floor for a residual column norm
    norm       norm comparison checks, times n * max-abs
    offdiag    Jacobi stop: off-diagonal Frobenius mass as a fraction of
               the input Frobenius norm
    cert       certificate gap, times n * (1 + max-abs of m)
    spec       spectrum restoration, times n * (1 + max-abs of targets)
    max_sweeps Jacobi sweep budget
    """

    herm_in: float = 1e-8
    orth: float = 1e-10
    resid: float = 1e-10
    rank: float = 1e-12
    norm: float = 1e-10
    offdiag: float = 1e-14
    cert: float = 1e-8
    spec: float = 1e-8
    max_sweeps: int = 30


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square matrix whose entries exactly equal their conjugate transpose.

    Entries are float64 or complex128; complex storage with an identically
    zero imaginary part is narrowed to float64 so real inputs stay on the
    real fast path.  The array is frozen (non-writeable) after validation.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise NonSquareError(
                f"expected a square matrix with n >= 1, got shape {arr.shape}"
            )
        if np.iscomplexobj(arr):
            arr = arr.astype(np.complex128, copy=True)
            if not arr.imag.any():
                arr = arr.real.copy()
        else:
            arr = arr.astype(np.float64, copy=True)
        if not np.array_equal(arr, arr.conj().T):
            raise NotNearHermitianError(
                "entries are not exactly Hermitian (or contain NaN); "
                "use symmetrize() for raw data"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.entries)

    def max_abs(self) -> float:
        """Largest entry magnitude; the scale factor in several tolerances."""
        return float(np.max(np.abs(self.entries)))

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        if self.n != other.n:
            raise LengthMismatchError(f"dimension mismatch: {self.n} vs {other.n}")
        return HermitianMatrix(self.entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        if self.n != other.n:
            raise LengthMismatchError(f"dimension mismatch: {self.n} vs {other.n}")
        return HermitianMatrix(self.entries - other.entries)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Multiset of real eigenvalues, stored unsorted as a float64 vector."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values)
        if arr.ndim != 1 or arr.size < 1:
            raise SpectrumFormatError(
                f"expected a non-empty 1-D vector of eigenvalues, got shape {arr.shape}"
            )
        if np.iscomplexobj(arr):
            if arr.imag.any():
                raise NonRealSpectrumError(
                    "eigenvalue targets must be real: a Hermitian matrix cannot "
                    "attain complex eigenvalues"
                )
            arr = arr.real
        arr = arr.astype(np.float64, copy=True)
        if not np.all(np.isfinite(arr)):
            raise NonFiniteSpectrumError("eigenvalues must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def sorted_values(self) -> np.ndarray:
        """Ascending copy of the values."""
        return np.sort(self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True, eq=False)
class SortedSpectralDecomposition:
    """Unitary eigenvector matrix paired with ascending eigenvalues.

    Column j of eigenvectors belongs to eigenvalues.values[j].  Produced by
    sorted_eig, which guarantees orthonormality and the phase convention
    (largest-magnitude entry of each column is real and positive).
    """

    eigenvectors: np.ndarray
    eigenvalues: Spectrum
    sweeps: int


def as_hermitian(m, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianMatrix:
    """Pass HermitianMatrix through; symmetrize anything else."""
    if isinstance(m, HermitianMatrix):
        return m
    return symmetrize(m, tol)


def as_spectrum(values) -> Spectrum:
    if isinstance(values, Spectrum):
        return values
    return Spectrum(np.asarray(values))


def symmetrize(raw, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianMatrix:
    """Average raw with its conjugate transpose: h = (raw + raw*) / 2.

    The input must already be Hermitian up to tol.herm_in * max(1, max-abs),
    otherwise NotNearHermitianError is raised; the gate catches transposed or
    corrupted data instead of silently folding it.  The averaged result is
    exactly Hermitian bit for bit (IEEE addition is commutative, conjugation
    and halving are exact), and already-Hermitian input comes back unchanged.
    """
    arr = np.asarray(raw)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NonSquareError(
            f"expected a square matrix with n >= 1, got shape {arr.shape}"
        )
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        arr = arr.astype(np.float64, copy=False)
    adj = arr.conj().T
    dev = float(np.max(np.abs(arr - adj)))
    scale = max(1.0, float(np.max(np.abs(arr))))
    if not dev <= tol.herm_in * scale:
        raise NotNearHermitianError(
            f"max deviation from conjugate transpose is {dev:.3e}, "
            f"above tolerance {tol.herm_in * scale:.3e}"
        )
    return HermitianMatrix((arr + adj) / 2.0)


def _eig_kernel(m: HermitianMatrix, want_vectors: bool, tol: Tolerances):
    if m.is_real:
        work = np.array(m.entries, dtype=np.float64, order="C")
        out = _backend.jacobi_real(work, want_vectors, tol.offdiag, tol.max_sweeps)
    else:
        work = np.array(m.entries, dtype=np.complex128, order="C")
        out = _backend.jacobi_complex(work, want_vectors, tol.offdiag, tol.max_sweeps)
    w, v, sweeps, converged = out
    if not converged:
        raise NoConvergenceError(
            f"Jacobi iteration left off-diagonal mass above tolerance "
            f"after {tol.max_sweeps} sweeps (n={m.n})"
        )
    return w, v, sweeps


def _normalize_phases(v: np.ndarray) -> None:
    # Pin each column's free phase: the first entry of largest magnitude is
    # made real and positive, so equal inputs give bit-equal eigenvectors.
    n = v.shape[1]
    complex_v = np.iscomplexobj(v)
    for j in range(n):
        col = v[:, j]
        k = int(np.argmax(np.abs(col)))
        z = col[k]
        if complex_v:
            r = abs(z)
            if r != 0.0:
                v[:, j] = col * complex(z.real / r, -z.imag / r)
                # the rotated pivot is |z| exactly; write that rather than
                # keep the multiply's rounding residue in the imaginary part
                v[k, j] = r
        else:
            if z < 0.0:
                v[:, j] = -col


def sorted_eig(
    m, tol: Tolerances = DEFAULT_TOLERANCES
) -> SortedSpectralDecomposition:
    """Full eigendecomposition with ascending eigenvalues and pinned phases.

    Ties are broken by the position the kernel produced (stable sort), and
    each eigenvector column is rotated so its largest-magnitude entry is real
    positive.  Raises NoConvergenceError if the sweep budget is exhausted.
    """
    m = as_hermitian(m, tol)
    w, v, sweeps = _eig_kernel(m, True, tol)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = np.ascontiguousarray(v[:, order])
    _normalize_phases(v)
    v.setflags(write=False)
    return SortedSpectralDecomposition(v, Spectrum(w), sweeps)


def eigenvalues_of(m, tol: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """Eigenvalues only (ascending); skips the eigenvector accumulation."""
    m = as_hermitian(m, tol)
    w, _, _ = _eig_kernel(m, False, tol)
    return Spectrum(np.sort(w))


def operator_two_norm(m, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Spectral norm: the largest eigenvalue magnitude."""
    m = as_hermitian(m, tol)
    w, _, _ = _eig_kernel(m, False, tol)
    return float(np.max(np.abs(w)))


def gram_schmidt_orthonormalize(
    vectors, tol: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Modified Gram-Schmidt over a sequence of n vectors of length n.

    Returns the matrix whose columns are the orthonormalized vectors, in
    order; column j spans the same space as the first j inputs.  To process
    the columns of an existing matrix u, pass u.T.  Raises RankDeficientError
    when a residual column norm falls to tol.rank or below.

    When the inputs are eigenvectors of one matrix grouped by eigenvalue the
    outputs remain eigenvectors: within a group the combination stays inside
    the eigenspace, across groups the projections vanish.
    """
    a = np.asarray(vectors)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NonSquareError(
            f"expected n vectors of length n with n >= 1, got shape {a.shape}"
        )
    dt = np.complex128 if np.iscomplexobj(a) else np.float64
    q = np.array(a, dtype=dt).T.copy()
    n = q.shape[1]
    for j in range(n):
        col = q[:, j]
        for i in range(j):
            qi = q[:, i]
            col -= np.dot(qi.conj(), col) * qi
        nrm = float(np.linalg.norm(col))
        if nrm <= tol.rank:
            raise RankDeficientError(
                f"vector {j} is numerically dependent on its predecessors "
                f"(residual norm {nrm:.3e})"
            )
        col /= nrm
    return q


# ---------------------------------------------------------------------------
# text formats
#
# Matrix files: one row per line, whitespace-separated entries, complex
# entries written a+bi / a-bi.  Spectrum files: one real value per line.
# Writers emit 17 significant digits so float64 round-trips exactly.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_entry(tok: str, lineno: int):
    try:
        if tok.endswith("i") or tok.endswith("I"):
            return complex(tok[:-1] + "j")
        return float(tok)
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: cannot parse entry {tok!r}") from None


def parse_matrix(text: str, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianMatrix:
    """Parse the matrix text format and validate through symmetrize."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks:
            continue
        row = [_parse_entry(t, lineno) for t in toks]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(
                f"line {lineno}: expected {width} entries, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        raise MatrixFormatError("no matrix rows found")
    return symmetrize(np.array(rows), tol)


def format_matrix(m: HermitianMatrix) -> str:
    ent = m.entries
    if m.is_real:
        lines = (" ".join(_fmt(x) for x in row) for row in ent)
    else:
        lines = (
            " ".join(f"{_fmt(z.real)}{z.imag:+.17g}i" for z in row) for row in ent
        )
    return "\n".join(lines) + "\n"


def parse_spectrum(text: str) -> Spectrum:
    vals = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            if tok.endswith(("i", "I", "j", "J")):
                raise NonRealSpectrumError(
                    f"line {lineno}: eigenvalue target {tok!r} is not real; "
                    "a Hermitian matrix cannot attain complex eigenvalues"
                )
            try:
                vals.append(float(tok))
            except ValueError:
                raise SpectrumFormatError(
                    f"line {lineno}: cannot parse value {tok!r}"
                ) from None
    if not vals:
        raise SpectrumFormatError("no spectrum values found")
    return Spectrum(np.array(vals))


def format_spectrum(s: Spectrum) -> str:
    return "\n".join(_fmt(x) for x in s.values) + "\n"
