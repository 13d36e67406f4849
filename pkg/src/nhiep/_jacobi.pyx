# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cyclic Jacobi eigensolver kernels, compiled implementation.

Mirrors nhiep._jacobi_py rotation for rotation; see that module for the
derivation of the complex plane rotation.  The python fallback vectorizes the
column updates with numpy while this version loops over elements, so results
agree to rounding (and bitwise in the common case) but are not guaranteed
identical at the last ulp.
"""
import numpy as np

from libc.math cimport copysign, fabs, hypot, sqrt

BACKEND_NAME = "compiled"


cdef inline double _cabs2(double complex z) noexcept:
    return z.real * z.real + z.imag * z.imag


def jacobi_real(double[:, ::1] a, bint want_vectors=True,
                double offdiag_tol=1e-14, int max_sweeps=30):
    """Diagonalize a symmetric float64 matrix in place.

    Returns (eigenvalues, eigenvectors or None, sweeps, converged); the
    eigenvalues are unsorted and the columns of the vector matrix match them.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k, i, j
    cdef int sweep, sweeps = 0
    cdef bint converged = False
    cdef double fro2 = 0.0, off, thresh2
    cdef double z, r, w, theta, t, c, s, sw, cw, app, aqq, akp, akq

    vec_arr = np.eye(n) if want_vectors else None
    cdef double[:, ::1] v = vec_arr if want_vectors else None

    for i in range(n):
        for j in range(n):
            fro2 += a[i, j] * a[i, j]
    thresh2 = offdiag_tol * offdiag_tol * fro2

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if off <= thresh2:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = fabs(z)
                if r == 0.0:
                    continue
                w = z / r
                theta = (a[q, q] - a[p, p]) / (2.0 * r)
                t = copysign(1.0, theta) / (fabs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                sw = s * w
                cw = c * w
                app = a[p, p] - t * r
                aqq = a[q, q] + t * r
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sw * akq
                    a[k, q] = s * akp + cw * akq
                for k in range(n):
                    a[p, k] = a[k, p]
                    a[q, k] = a[k, q]
                a[p, p] = app
                a[q, q] = aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        akp = v[k, p]
                        akq = v[k, q]
                        v[k, p] = c * akp - sw * akq
                        v[k, q] = s * akp + cw * akq

    w_arr = np.empty(n)
    cdef double[::1] wv = w_arr
    for i in range(n):
        wv[i] = a[i, i]
    return w_arr, vec_arr, sweeps, converged


def jacobi_complex(double complex[:, ::1] a, bint want_vectors=True,
                   double offdiag_tol=1e-14, int max_sweeps=30):
    """Complex Hermitian variant of jacobi_real; same contract."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k, i, j
    cdef int sweep, sweeps = 0
    cdef bint converged = False
    cdef double fro2 = 0.0, off, thresh2
    cdef double r, theta, t, c, s, app, aqq
    cdef double complex z, w, swbar, cwbar, zkp, zkq

    vec_arr = np.eye(n, dtype=np.complex128) if want_vectors else None
    cdef double complex[:, ::1] v = vec_arr if want_vectors else None

    for i in range(n):
        for j in range(n):
            fro2 += _cabs2(a[i, j])
    thresh2 = offdiag_tol * offdiag_tol * fro2

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * _cabs2(a[i, j])
        if off <= thresh2:
            converged = True
            break
        if sweep == max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = hypot(z.real, z.imag)
                if r == 0.0:
                    continue
                # componentwise, not z / r: the complex-division helper may
                # route through a rounded reciprocal and put w off the unit
                # circle by an ulp even when z is real
                w.real = z.real / r
                w.imag = z.imag / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = copysign(1.0, theta) / (fabs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                swbar = s * w.conjugate()
                cwbar = c * w.conjugate()
                app = a[p, p].real - t * r
                aqq = a[q, q].real + t * r
                for k in range(n):
                    zkp = a[k, p]
                    zkq = a[k, q]
                    a[k, p] = c * zkp - swbar * zkq
                    a[k, q] = s * zkp + cwbar * zkq
                for k in range(n):
                    a[p, k] = a[k, p].conjugate()
                    a[q, k] = a[k, q].conjugate()
                a[p, p] = app
                a[q, q] = aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        zkp = v[k, p]
                        zkq = v[k, q]
                        v[k, p] = c * zkp - swbar * zkq
                        v[k, q] = s * zkp + cwbar * zkq

    w_arr = np.empty(n)
    cdef double[::1] wv = w_arr
    for i in range(n):
        wv[i] = a[i, i].real
    return w_arr, vec_arr, sweeps, converged
