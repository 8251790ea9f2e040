# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled complex-double kernels; same contracts as ``_pykernels``."""

import numpy as np

cdef extern from "complex.h":
    double cabs(double complex z) nogil


cdef inline double complex _cpow(double complex z, long k) noexcept nogil:
    cdef double complex result = 1.0
    while k:
        if k & 1:
            result = result * z
        k >>= 1
        if k:
            z = z * z
    return result


def solve_dense(matrix, rhs):
    cdef Py_ssize_t n = len(rhs)
    arr = np.empty((n, n + 1), dtype=complex)
    arr[:, :n] = np.asarray(matrix, dtype=complex).reshape(n, n)
    arr[:, n] = np.asarray(rhs, dtype=complex)
    cdef double complex[:, ::1] a = arr
    cdef Py_ssize_t i, j, k, piv
    cdef double best, cur
    cdef double complex f, inv, acc, tmp
    for k in range(n):
        piv = k
        best = cabs(a[k, k])
        for i in range(k + 1, n):
            cur = cabs(a[i, k])
            if cur > best:
                best = cur
                piv = i
        if best == 0.0:
            raise ZeroDivisionError(f"singular matrix (zero pivot in column {k})")
        if piv != k:
            for j in range(n + 1):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
        inv = 1.0 / a[k, k]
        for i in range(k + 1, n):
            f = a[i, k] * inv
            if f != 0:
                for j in range(k + 1, n + 1):
                    a[i, j] = a[i, j] - f * a[k, j]
            a[i, k] = 0
    out = np.empty(n, dtype=complex)
    cdef double complex[::1] x = out
    for k in range(n - 1, -1, -1):
        acc = a[k, n]
        for j in range(k + 1, n):
            acc = acc - a[k, j] * x[j]
        x[k] = acc / a[k, k]
    return out


def horner_eval(coeffs, long ell_min, d, v):
    cdef double complex[::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    cdef double complex[::1] dd = np.ascontiguousarray(d, dtype=complex)
    cdef double complex[::1] vv = np.ascontiguousarray(v, dtype=complex)
    cdef Py_ssize_t npts = vv.shape[0]
    cdef Py_ssize_t nc = c.shape[0]
    out = np.empty(npts, dtype=complex)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i, k
    cdef double complex acc, vi, scale
    with nogil:
        for i in range(npts):
            vi = vv[i]
            acc = 0
            for k in range(nc - 1, -1, -1):
                acc = acc * vi + c[k]
            if ell_min >= 0:
                scale = _cpow(vi, ell_min)
            else:
                scale = _cpow(1.0 / vi, -ell_min)
            o[i] = dd[i] * scale * acc
    return out


def esym_all(values):
    cdef double complex[::1] x = np.ascontiguousarray(values, dtype=complex)
    cdef Py_ssize_t n = x.shape[0]
    out = np.zeros(n + 1, dtype=complex)
    cdef double complex[::1] e = out
    cdef Py_ssize_t k, m
    e[0] = 1
    with nogil:
        for k in range(1, n + 1):
            for m in range(k, 0, -1):
                e[m] = e[m] + x[k - 1] * e[m - 1]
    return out


def power_matrix(d, v, long ell_min, Py_ssize_t n):
    cdef double complex[::1] dd = np.ascontiguousarray(d, dtype=complex)
    cdef double complex[::1] vv = np.ascontiguousarray(v, dtype=complex)
    cdef Py_ssize_t npts = vv.shape[0]
    out = np.empty((npts, n), dtype=complex)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t i, k
    cdef double complex cur, vi
    with nogil:
        for i in range(npts):
            vi = vv[i]
            if ell_min >= 0:
                cur = dd[i] * _cpow(vi, ell_min)
            else:
                cur = dd[i] * _cpow(1.0 / vi, -ell_min)
            for k in range(n):
                o[i, k] = cur
                cur = cur * vi
    return out
