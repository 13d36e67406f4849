"""Cyclic Jacobi eigensolver kernels, pure numpy implementation.

This is the fallback used when the compiled extension is unavailable.  Both
backends implement the same arithmetic: one cyclic sweep visits every strictly
upper pair (p, q) in row-major order and applies a unitary plane rotation that
zeroes a[p, q].  For a complex entry z = a[p, q] the rotation first strips the
phase w = z / |z| and then applies the usual symmetric Schur rotation built
from theta = (a[q, q] - a[p, p]) / (2 |z|), so the 2x2 block

    [[c, s], [-s * conj(w), c * conj(w)]]

is unitary and annihilates the pair.  Convergence is declared when the
off-diagonal squared Frobenius mass drops below (tol * ||input||_F)^2, checked
before every sweep so an already diagonal matrix costs zero sweeps.

Kernels do not raise on non-convergence; callers inspect the returned flag.
"""
import math

import numpy as np

BACKEND_NAME = "python"


def _offmass2(a):
    # Sum only the off-diagonal squares: subtracting the diagonal mass from
    # the total would cancel catastrophically once the matrix is nearly
    # diagonal, reporting convergence a sweep early.
    m2 = np.abs(a) ** 2
    np.fill_diagonal(m2, 0.0)
    return float(np.sum(m2))


def jacobi_real(a, want_vectors=True, offdiag_tol=1e-14, max_sweeps=30):
    """Diagonalize a symmetric float64 matrix in place.

    Returns (eigenvalues, eigenvectors or None, sweeps, converged); the
    eigenvalues are unsorted and the columns of the vector matrix match them.
    """
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    thresh2 = (offdiag_tol * float(np.linalg.norm(a))) ** 2
    sweeps = 0
    converged = False
    for sweep in range(max_sweeps + 1):
        if _offmass2(a) <= thresh2:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r == 0.0:
                    continue
                w = z / r
                theta = (a[q, q] - a[p, p]) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sw = s * w
                cw = c * w
                app = a[p, p] - t * r
                aqq = a[q, q] + t * r
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - sw * colq
                a[:, q] = s * colp + cw * colq
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app
                a[q, q] = aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - sw * vq
                    v[:, q] = s * vp + cw * vq
    return np.diagonal(a).copy(), v, sweeps, converged


def jacobi_complex(a, want_vectors=True, offdiag_tol=1e-14, max_sweeps=30):
    """Complex Hermitian variant of jacobi_real; same contract."""
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    thresh2 = (offdiag_tol * float(np.linalg.norm(a))) ** 2
    sweeps = 0
    converged = False
    for sweep in range(max_sweeps + 1):
        if _offmass2(a) <= thresh2:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r == 0.0:
                    continue
                # divide the components directly: numpy's complex / real
                # scalar division multiplies by a rounded reciprocal, which
                # would put w off the unit circle by one ulp even for real z
                w = complex(z.real / r, z.imag / r)
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                swbar = s * w.conjugate()
                cwbar = c * w.conjugate()
                app = a[p, p].real - t * r
                aqq = a[q, q].real + t * r
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - swbar * colq
                a[:, q] = s * colp + cwbar * colq
                a[p, :] = np.conj(a[:, p])
                a[q, :] = np.conj(a[:, q])
                a[p, p] = app
                a[q, q] = aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - swbar * vq
                    v[:, q] = s * vp + cwbar * vq
    return np.diagonal(a).real.copy(), v, sweeps, converged
