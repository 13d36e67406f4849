#!/usr/bin/env python3
"""Time the Jacobi kernels: compiled extension vs the numpy fallback.

Both backends implement identical arithmetic, so this only measures
dispatch and loop overhead.  Run from the repo root after an editable
install:

    python3 benchmarks/bench_backends.py --sizes 4,8,16,32,64 --repeats 3
"""
import argparse
import time

import numpy as np

from nhiep import _jacobi_py

try:
    from nhiep import _jacobi
except ImportError:
    _jacobi = None


def hermitian_instance(rng, n: int, complex_: bool) -> np.ndarray:
    if complex_:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (g + g.conj().T) / 2
    g = rng.standard_normal((n, n))
    return (g + g.T) / 2


def best_time(kernel, mat: np.ndarray, want_vectors: bool, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        work = mat.copy()
        start = time.perf_counter()
        _, _, _, converged = kernel(work, want_vectors, 1e-14, 30)
        best = min(best, time.perf_counter() - start)
        if not converged:
            raise RuntimeError(f"kernel failed to converge at n={mat.shape[0]}")
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", default="4,8,16,32,64", help="comma-separated matrix sizes"
    )
    parser.add_argument(
        "--repeats", type=int, default=3, help="timed repeats per cell, best kept"
    )
    args = parser.parse_args(argv)
    sizes = [int(tok) for tok in args.sizes.split(",")]

    if _jacobi is None:
        print("compiled extension not importable; timing the fallback only")
    rng = np.random.default_rng(0)

    header = (
        f"{'n':>4}  {'kind':>7}  {'vectors':>7}  {'python ms':>10}"
        f"  {'compiled ms':>12}  {'speedup':>8}"
    )
    print(header)
    print("-" * len(header))
    for n in sizes:
        for kind in ("real", "complex"):
            mat = hermitian_instance(rng, n, kind == "complex")
            py_kernel = getattr(_jacobi_py, f"jacobi_{kind}")
            c_kernel = getattr(_jacobi, f"jacobi_{kind}") if _jacobi else None
            for want_vectors in (False, True):
                t_py = best_time(py_kernel, mat, want_vectors, args.repeats)
                if c_kernel is not None:
                    t_c = best_time(c_kernel, mat, want_vectors, args.repeats)
                    ratio = f"{t_py / t_c:7.1f}x"
                    c_ms = f"{t_c * 1e3:12.3f}"
                else:
                    ratio = f"{'-':>8}"
                    c_ms = f"{'-':>12}"
                print(
                    f"{n:>4}  {kind:>7}  {'yes' if want_vectors else 'no':>7}"
                    f"  {t_py * 1e3:10.3f}  {c_ms}  {ratio}"
                )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
