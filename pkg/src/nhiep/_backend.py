"""Selects the eigensolver kernel backend at import time.

The compiled extension is preferred; the numpy implementation is the fallback
so a pure-Python install still works.  benchmarks/bench_backends.py compares
the two.
"""
try:
    from nhiep import _jacobi as _kernels
except ImportError:
    from nhiep import _jacobi_py as _kernels

jacobi_real = _kernels.jacobi_real
jacobi_complex = _kernels.jacobi_complex


def active_backend() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return _kernels.BACKEND_NAME
