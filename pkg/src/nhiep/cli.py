"""Command-line front end: solve, bound, sweep, image.

Exit codes are a stable contract: 0 success, 2 input or validation error,
3 certificate failure.  Summary lines on stdout are machine-parsable
key=value pairs (cmd_bound prints just the number); sweep progress streams
to stderr.  Every subcommand is deterministic given its flags and seed.
"""
import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from nhiep.errors import NhiepError
from nhiep.experiments import SweepConfig, results_to_csv, run_sweep, sample_rng
from nhiep.image import (
    correct_image,
    distort_image,
    half_distances,
    half_spectra,
    load_pgm,
    save_pgm,
)
from nhiep.solver import certify, solve_nhiep, weyl_lower_bound
from nhiep.spectral import (
    DEFAULT_TOLERANCES,
    format_matrix,
    parse_matrix,
    parse_spectrum,
)

# Default RNG seed for sweep and image; fixed so bare invocations reproduce.
DEFAULT_SEED = 1729


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _parse_dims(text: str):
    """Dimension list: comma-separated integers and/or a..b inclusive ranges."""
    dims = []
    for seg in text.split(","):
        seg = seg.strip()
        try:
            if ".." in seg:
                lo, hi = seg.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                dims.extend(range(lo, hi + 1))
            else:
                dims.append(int(seg))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad dims segment {seg!r}; use e.g. 2..20 or 2,5,8"
            ) from None
    return tuple(dims)


def _parse_floats(text: str):
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad float list {text!r}; use e.g. 0,25,100"
        ) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nhiep",
        description=(
            "Nearest Hermitian matrix with a prescribed spectrum: solver, "
            "distance bound, Monte Carlo sweep, and image correction demo."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "solve",
        help="solve one instance and certify optimality",
        description=(
            "Read a Hermitian matrix and a target spectrum, write the "
            "nearest matrix with that spectrum, print a summary line; "
            "exit 3 if the optimality certificate fails."
        ),
    )
    p.add_argument("matrix", help="matrix text file (rows of entries, a+bi for complex)")
    p.add_argument("spectrum", help="spectrum text file (one real value per line)")
    p.add_argument("out", help="path for the corrected matrix")
    p.add_argument(
        "--tol-cert",
        type=float,
        default=None,
        help="certificate gap coefficient (default %g)" % DEFAULT_TOLERANCES.cert,
    )
    p.add_argument(
        "--tol-spec",
        type=float,
        default=None,
        help="spectrum residual coefficient (default %g)" % DEFAULT_TOLERANCES.spec,
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "bound",
        help="distance lower bound between two spectra",
        description="Print the eigenvalue-pairing lower bound for two spectrum files.",
    )
    p.add_argument("spectrum_a")
    p.add_argument("spectrum_b")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser(
        "sweep",
        help="Monte Carlo improvement-ratio sweep over (dim, distortion) cells",
        description=(
            "Sample random symmetric matrices, perturb, solve, and write "
            "per-cell improvement-ratio statistics as CSV."
        ),
    )
    p.add_argument("--dims", type=_parse_dims, required=True, help="e.g. 2..20 or 2,5,8")
    p.add_argument(
        "--distortions", type=_parse_floats, required=True, help="e.g. 0,25,100,200"
    )
    p.add_argument("--samples", type=int, default=1000, help="samples per cell")
    p.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})"
    )
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes (default: NHIEP_WORKERS env var, else 1); "
        "results are identical for any worker count",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "image",
        help="distort a square PGM image and correct it from carried spectra",
        description=(
            "Split a square grayscale image into symmetric halves, add scaled "
            "noise, restore each half's original spectrum, and write both the "
            "distorted and corrected images."
        ),
    )
    p.add_argument("input", help="square PGM image (P5 or P2, maxval 255)")
    p.add_argument(
        "--distortion",
        type=float,
        required=True,
        help="noise amplitude in 8-bit gray levels (pixel scale is d/255)",
    )
    p.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})"
    )
    p.add_argument("--out-distorted", required=True, help="path for the distorted PGM")
    p.add_argument("--out-corrected", required=True, help="path for the corrected PGM")
    p.add_argument(
        "--ascii", action="store_true", help="write P2 (ascii) instead of P5 output"
    )
    p.set_defaults(func=cmd_image)

    return parser


def cmd_solve(args) -> int:
    m = parse_matrix(Path(args.matrix).read_text())
    target = parse_spectrum(Path(args.spectrum).read_text())
    tol = DEFAULT_TOLERANCES
    if args.tol_cert is not None:
        tol = replace(tol, cert=args.tol_cert)
    if args.tol_spec is not None:
        tol = replace(tol, spec=args.tol_spec)
    solution = solve_nhiep(m, target, tol)
    report = certify(solution, m, tol)
    Path(args.out).write_text(format_matrix(solution.corrected))
    verdict = "true" if report.passed else "false"
    print(
        f"distance={_g(report.achieved_distance)} "
        f"bound={_g(report.lower_bound)} certified={verdict}"
    )
    return 0 if report.passed else 3


def cmd_bound(args) -> int:
    a = parse_spectrum(Path(args.spectrum_a).read_text())
    b = parse_spectrum(Path(args.spectrum_b).read_text())
    print(_g(weyl_lower_bound(a, b)))
    return 0


def cmd_sweep(args) -> int:
    config = SweepConfig(
        dims=args.dims,
        distortions=args.distortions,
        samples=args.samples,
        seed=args.seed,
    )
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("NHIEP_WORKERS", "1"))
    total = len(config.dims) * len(config.distortions)
    done = 0

    def progress(res):
        nonlocal done
        done += 1
        print(
            f"cell {done}/{total}: dim={res.dim} distortion={_g(res.distortion)} "
            f"mean_ip={_g(res.mean_ip)} failures={res.failures}",
            file=sys.stderr,
        )

    results = run_sweep(config, workers=workers, progress=progress)
    Path(args.out).write_text(results_to_csv(results))
    failures = sum(r.failures for r in results)
    print(f"cells={total} samples={config.samples} failures={failures} out={args.out}")
    return 0


def cmd_image(args) -> int:
    if args.distortion < 0:
        raise NhiepError("--distortion must be non-negative")
    original = load_pgm(args.input)
    spectra = half_spectra(original)
    n = original.height
    rng = sample_rng(args.seed, n, args.distortion, 0)
    distorted = distort_image(original, args.distortion, rng)
    corrected = correct_image(spectra, distorted)
    binary = not args.ascii
    save_pgm(distorted, args.out_distorted, binary=binary)
    save_pgm(corrected, args.out_corrected, binary=binary)
    du, dl = half_distances(original, distorted)
    cu, cl = half_distances(original, corrected)
    print(
        f"upper_distorted={_g(du)} upper_corrected={_g(cu)} "
        f"lower_distorted={_g(dl)} lower_corrected={_g(cl)}"
    )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NhiepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
