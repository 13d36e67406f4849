"""Monte Carlo study of how much of a random perturbation the solver removes.

Each sample draws a random symmetric matrix a, perturbs it to m = a + d * x
with x from the same ensemble, then measures the improvement ratio

    ip(a, m) = 1 - ||a - corrected|| / ||a - m||

where corrected restores the spectrum of a over the eigenbasis of m.  An ip
of 1 means the perturbation was removed entirely, 0 means no progress; when
m equals a the ratio is defined as 0.

Randomness is counter based: every (dim, distortion, sample index) triple
maps to its own Philox stream, so results do not depend on cell order or on
how work is split across processes, and any single sample can be replayed.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from nhiep.errors import NhiepError
from nhiep.spectral import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    Tolerances,
    eigenvalues_of,
    operator_two_norm,
)
from nhiep.solver import solve_nhiep

__all__ = [
    "SweepConfig",
    "SweepResult",
    "sample_rng",
    "random_symmetric",
    "distort",
    "improvement_ratio",
    "run_sweep",
    "results_to_csv",
]

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SweepConfig:
    """Grid of (dimension, distortion) cells plus sampling parameters."""

    dims: tuple
    distortions: tuple
    samples: int
    seed: int

    def __post_init__(self):
        if not self.dims or any(int(n) < 2 for n in self.dims):
            raise ValueError("dims must be a non-empty sequence of integers >= 2")
        if not self.distortions or any(float(d) < 0 for d in self.distortions):
            raise ValueError("distortions must be non-empty and non-negative")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        object.__setattr__(
            self, "distortions", tuple(float(d) for d in self.distortions)
        )


@dataclass(frozen=True)
class SweepResult:
    """Aggregated improvement ratios for one (dim, distortion) cell.

    std_ip is the sample standard deviation (ddof=1) over the successful
    samples, 0.0 when only one succeeded; failures counts samples where the
    solver raised instead of returning a ratio.
    """

    dim: int
    distortion: float
    samples: int
    mean_ip: float
    std_ip: float
    failures: int


def sample_rng(seed: int, dim: int, distortion: float, index: int):
    """Philox generator for one sample, keyed by (seed, dim, distortion, index).

    The distortion enters through the bit pattern of its float64 value, so
    distinct distortions (including 0.25 vs 0.5) get distinct streams without
    any rounding ambiguity.
    """
    dbits = int(np.float64(distortion).view(np.uint64))
    entropy = [int(seed) & _MASK64, int(dim), dbits, int(index)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def random_symmetric(n: int, rng) -> HermitianMatrix:
    """Standard-normal symmetric matrix: n(n+1)/2 draws, mirrored."""
    vals = rng.standard_normal(n * (n + 1) // 2)
    a = np.zeros((n, n))
    iu = np.triu_indices(n)
    a[iu] = vals
    a.T[iu] = vals
    return HermitianMatrix(a)


def distort(a: HermitianMatrix, d: float, rng) -> HermitianMatrix:
    """a + d * x with x a fresh standard-normal symmetric draw.

    d = 0 returns a itself (bit-exact, no draw consumed).
    """
    if d == 0:
        return a
    x = random_symmetric(a.n, rng)
    return HermitianMatrix(a.entries + d * x.entries)


def improvement_ratio(
    a: HermitianMatrix, m: HermitianMatrix, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """1 - ||a - corrected|| / ||a - m||, where corrected restores the
    spectrum of a over the eigenbasis of m; defined as 0 when m equals a."""
    denom = operator_two_norm(a - m, tol)
    if denom == 0.0:
        return 0.0
    sol = solve_nhiep(m, eigenvalues_of(a, tol), tol)
    num = operator_two_norm(a - sol.corrected, tol)
    return 1.0 - num / denom


def _run_cell(dim: int, distortion: float, samples: int, seed: int) -> SweepResult:
    ips = []
    failures = 0
    for index in range(samples):
        rng = sample_rng(seed, dim, distortion, index)
        a = random_symmetric(dim, rng)
        m = distort(a, distortion, rng)
        try:
            ips.append(improvement_ratio(a, m))
        except NhiepError:
            failures += 1
    if ips:
        mean = float(np.mean(ips))
        std = float(np.std(ips, ddof=1)) if len(ips) > 1 else 0.0
    else:
        mean = float("nan")
        std = float("nan")
    return SweepResult(dim, distortion, samples, mean, std, failures)


def run_sweep(config: SweepConfig, workers: int = 1, progress=None) -> list:
    """Run every (dim, distortion) cell; returns results in grid order.

    workers > 1 distributes cells over processes; because each sample owns a
    counter-based stream the output is identical for any worker count.  The
    progress callback, if given, receives each SweepResult as it completes.
    """
    cells = [(n, d) for n in config.dims for d in config.distortions]
    results = []
    if workers <= 1:
        for n, d in cells:
            res = _run_cell(n, d, config.samples, config.seed)
            if progress is not None:
                progress(res)
            results.append(res)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_cell, n, d, config.samples, config.seed)
                for n, d in cells
            ]
            for fut in futures:
                res = fut.result()
                if progress is not None:
                    progress(res)
                results.append(res)
    return results


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def results_to_csv(results) -> str:
    """CSV with header dim,distortion,samples,mean_ip,std_ip,failures.

    Rows are sorted by (dim, distortion); floats carry 17 significant digits
    so equal runs produce byte-identical files.
    """
    lines = ["dim,distortion,samples,mean_ip,std_ip,failures"]
    for r in sorted(results, key=lambda r: (r.dim, r.distortion)):
        lines.append(
            f"{r.dim},{_g17(r.distortion)},{r.samples},"
            f"{_g17(r.mean_ip)},{_g17(r.std_ip)},{r.failures}"
        )
    return "\n".join(lines) + "\n"
