"""Square grayscale images as pairs of symmetric matrices.

A square image splits into two symmetric halves: `upper` keeps the upper
triangle (diagonal included) and mirrors it below, `lower` keeps the lower
triangle likewise.  Merging puts each triangle back and averages the two
diagonals, so merge(split(img)) is the identity bit for bit.  The halves are
ordinary HermitianMatrix values, which is what lets the spectrum-restoring
solver act on photographs: distort each half with scaled noise, then correct
it using the half's original eigenvalues carried as side-channel data.

Pixels are float64; loading divides 8-bit samples by 255 and saving applies
the periodic tone map before quantizing, so out-of-range values produced by
the solver fold back into [0, 1] instead of clipping to flat black or white.
"""
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from nhiep.errors import (
    DimensionMismatchError,
    NhiepError,
    NonSquareImageError,
    PgmFormatError,
)
from nhiep.experiments import random_symmetric
from nhiep.spectral import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    Spectrum,
    Tolerances,
    eigenvalues_of,
    operator_two_norm,
)
from nhiep.solver import solve_nhiep

__all__ = [
    "GrayImage",
    "SymmetricPair",
    "load_pgm",
    "save_pgm",
    "tone_map",
    "split_symmetric",
    "merge_symmetric",
    "distort_image",
    "correct_image",
    "half_spectra",
    "half_distances",
    "synthetic_image",
]


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Grayscale raster, float64 pixels in row-major (height, width) layout.

    Values are nominally in [0, 1] but intermediate pipeline stages may step
    outside; only saving folds them back via tone_map.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise NonSquareImageError(
                f"expected a 2-D pixel grid, got shape {arr.shape}"
            )
        if np.iscomplexobj(arr):
            raise NhiepError("image pixels must be real-valued")
        arr = arr.astype(np.float64, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True, eq=False)
class SymmetricPair:
    """The two symmetric halves of a square image, same size."""

    upper: HermitianMatrix
    lower: HermitianMatrix

    def __post_init__(self):
        if self.upper.n != self.lower.n:
            raise DimensionMismatchError(
                f"halves disagree on size: {self.upper.n} vs {self.lower.n}"
            )

    @property
    def n(self) -> int:
        return self.upper.n


def split_symmetric(img: GrayImage) -> SymmetricPair:
    """Reflect each triangle of a square image across the diagonal.

    Pure entry placement, no arithmetic, so the halves hold bit-exact copies
    of the original pixels.
    """
    p = img.pixels
    if img.height != img.width:
        raise NonSquareImageError(
            f"cannot split a {img.height}x{img.width} image; it must be square"
        )
    n = img.height
    upper = p.copy()
    il = np.tril_indices(n, -1)
    upper[il] = p.T[il]
    lower = p.copy()
    iu = np.triu_indices(n, 1)
    lower[iu] = p.T[iu]
    return SymmetricPair(HermitianMatrix(upper), HermitianMatrix(lower))


def merge_symmetric(pair: SymmetricPair) -> GrayImage:
    """Inverse of split_symmetric: triangles verbatim, diagonals averaged."""
    u = pair.upper.entries
    lo = pair.lower.entries
    out = lo.copy()
    iu = np.triu_indices(pair.n, 1)
    out[iu] = u[iu]
    d = np.arange(pair.n)
    out[d, d] = (np.diagonal(u) + np.diagonal(lo)) / 2.0
    return GrayImage(out)


def tone_map(v):
    """Fold any real value into [0, 1] with the periodic triangle wave
    1 - |(v mod 2) - 1|; identity on [0, 1], period 2, continuous."""
    arr = np.asarray(v, dtype=np.float64)
    out = 1.0 - np.abs(np.mod(arr, 2.0) - 1.0)
    return float(out) if out.ndim == 0 else out


def distort_image(img: GrayImage, d: float, rng) -> GrayImage:
    """Add scaled symmetric noise to each half: half + (d / 255) * x.

    The divisor puts d on the 8-bit sample scale, so d = 10 perturbs pixels
    by roughly 10 gray levels.  Upper-half noise is drawn before lower-half
    noise from the given generator; d = 0 returns the image unchanged.
    """
    if d == 0:
        return img
    pair = split_symmetric(img)
    scale = d / 255.0
    n = pair.n
    upper = HermitianMatrix(
        pair.upper.entries + scale * random_symmetric(n, rng).entries
    )
    lower = HermitianMatrix(
        pair.lower.entries + scale * random_symmetric(n, rng).entries
    )
    return merge_symmetric(SymmetricPair(upper, lower))


def half_spectra(
    img: GrayImage, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple:
    """Eigenvalues of the two halves, the side-channel data for correction."""
    pair = split_symmetric(img)
    return eigenvalues_of(pair.upper, tol), eigenvalues_of(pair.lower, tol)


def correct_image(
    spectra: tuple, distorted: GrayImage, tol: Tolerances = DEFAULT_TOLERANCES
) -> GrayImage:
    """Restore the carried spectra on the halves of a distorted image.

    spectra is the (upper, lower) pair from half_spectra of the original.
    Each half moves to the nearest symmetric matrix with its original
    eigenvalues; the corrected halves are merged back into one image.
    """
    su, sl = spectra
    pair = split_symmetric(distorted)
    cu = solve_nhiep(pair.upper, su, tol).corrected
    cl = solve_nhiep(pair.lower, sl, tol).corrected
    return merge_symmetric(SymmetricPair(cu, cl))


def half_distances(
    reference: GrayImage, other: GrayImage, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple:
    """Operator 2-norm distance between the images, half by half."""
    if (reference.height, reference.width) != (other.height, other.width):
        raise DimensionMismatchError(
            f"images disagree on size: {reference.height}x{reference.width} "
            f"vs {other.height}x{other.width}"
        )
    ra = split_symmetric(reference)
    ob = split_symmetric(other)
    return (
        operator_two_norm(ra.upper - ob.upper, tol),
        operator_two_norm(ra.lower - ob.lower, tol),
    )


# ---------------------------------------------------------------------------
# PGM input/output (P5 binary and P2 ascii, maxval 255 only)


def _pgm_header_tokens(data: bytes):
    # Yields (token, next_position); handles whitespace and # comments.
    pos = 0
    size = len(data)
    while pos < size:
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < size and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            start = pos
            while pos < size and not data[pos : pos + 1].isspace():
                pos += 1
            yield data[start:pos].decode("ascii", "replace"), pos
    return


def load_pgm(path) -> GrayImage:
    """Read a P5 or P2 PGM file with maxval 255; pixels come out in [0, 1]."""
    data = Path(path).read_bytes()
    tokens = _pgm_header_tokens(data)
    header = []
    pos = 0
    try:
        for _ in range(4):
            tok, pos = next(tokens)
            header.append(tok)
    except StopIteration:
        raise PgmFormatError("truncated header") from None
    magic = header[0]
    if magic not in ("P5", "P2"):
        raise PgmFormatError(f"unsupported magic {magic!r}; need P5 or P2")
    try:
        width, height, maxval = (int(t) for t in header[1:])
    except ValueError:
        raise PgmFormatError(f"non-integer header fields {header[1:]!r}") from None
    if width < 1 or height < 1:
        raise PgmFormatError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PgmFormatError(f"only maxval 255 is supported, got {maxval}")
    count = width * height
    if magic == "P5":
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) < count:
            raise PgmFormatError(
                f"truncated raster: expected {count} bytes, got {len(raster)}"
            )
        samples = np.frombuffer(raster, dtype=np.uint8)
    else:
        toks = data[pos:].split()
        if len(toks) != count:
            raise PgmFormatError(
                f"expected {count} ascii samples, got {len(toks)}"
            )
        try:
            samples = np.array([int(t) for t in toks], dtype=np.int64)
        except ValueError:
            raise PgmFormatError("non-integer ascii sample") from None
        if samples.min() < 0 or samples.max() > 255:
            raise PgmFormatError("ascii sample out of range 0..255")
    pixels = samples.astype(np.float64).reshape(height, width) / 255.0
    return GrayImage(pixels)


def save_pgm(img: GrayImage, path, binary: bool = True) -> None:
    """Write a PGM file (P5, or P2 with binary=False).

    Pixels go through tone_map and are quantized with round-half-even, so
    any real-valued image can be saved without clipping artifacts.
    """
    q = np.rint(tone_map(img.pixels) * 255.0).astype(np.uint8)
    h, w = q.shape
    if binary:
        payload = f"P5\n{w} {h}\n255\n".encode("ascii") + q.tobytes()
        Path(path).write_bytes(payload)
    else:
        rows = "\n".join(" ".join(str(int(x)) for x in row) for row in q)
        Path(path).write_text(f"P2\n{w} {h}\n255\n{rows}\n", encoding="ascii")


def synthetic_image(n: int = 64) -> GrayImage:
    """Deterministic grayscale test pattern with smooth and sharp structure:
    a gradient, two blobs, and a low-amplitude ripple, clipped to [0, 1]."""
    if n < 1:
        raise NonSquareImageError("image size must be >= 1")
    span = max(n - 1, 1)
    y, x = np.mgrid[0:n, 0:n] / span
    img = 0.30 + 0.25 * x + 0.15 * y
    img += 0.25 * np.exp(-((x - 0.30) ** 2 + (y - 0.65) ** 2) / 0.015)
    img += 0.20 * np.exp(-((x - 0.75) ** 2 + (y - 0.25) ** 2) / 0.040)
    img += 0.05 * np.sin(9.0 * np.pi * x) * np.sin(7.0 * np.pi * y)
    return GrayImage(np.clip(img, 0.0, 1.0))
