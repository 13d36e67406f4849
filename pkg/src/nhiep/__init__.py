"""Nearest Hermitian matrix with a prescribed spectrum.

Given a Hermitian matrix m and a real target spectrum, solve_nhiep returns
the closest Hermitian matrix (operator 2-norm) whose eigenvalues are exactly
the targets: replace m's eigenvalues with the sorted targets over m's own
eigenbasis.  The achieved distance meets the eigenvalue-pairing lower bound,
and certify() rechecks that optimality evidence from scratch.
"""
__version__ = "0.1.0"

from nhiep._backend import active_backend
from nhiep.errors import (
    DimensionMismatchError,
    LengthMismatchError,
    MatrixFormatError,
    NhiepError,
    NoConvergenceError,
    NonFiniteSpectrumError,
    NonRealSpectrumError,
    NonSquareError,
    NonSquareImageError,
    NotNearHermitianError,
    PgmFormatError,
    RankDeficientError,
    SpectrumFormatError,
)
from nhiep.experiments import (
    SweepConfig,
    SweepResult,
    distort,
    improvement_ratio,
    random_symmetric,
    results_to_csv,
    run_sweep,
    sample_rng,
)
from nhiep.image import (
    GrayImage,
    SymmetricPair,
    correct_image,
    distort_image,
    half_distances,
    half_spectra,
    load_pgm,
    merge_symmetric,
    save_pgm,
    split_symmetric,
    synthetic_image,
    tone_map,
)
from nhiep.solver import (
    CertificateReport,
    NhiepSolution,
    certify,
    solve_nhiep,
    weyl_lower_bound,
)
from nhiep.spectral import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    SortedSpectralDecomposition,
    Spectrum,
    Tolerances,
    as_hermitian,
    as_spectrum,
    eigenvalues_of,
    format_matrix,
    format_spectrum,
    gram_schmidt_orthonormalize,
    operator_two_norm,
    parse_matrix,
    parse_spectrum,
    sorted_eig,
    symmetrize,
)
