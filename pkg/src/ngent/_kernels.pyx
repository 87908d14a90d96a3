# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled moment kernels: one pass over the lattice per monomial."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef void _weights(double[::1] w, Py_ssize_t s, Py_ssize_t d) noexcept nogil:
    # w[i] = sqrt(i!/(i-s)!) for i >= s
    cdef Py_ssize_t i, u
    cdef double acc
    for i in range(d):
        if i < s:
            w[i] = 0.0
            continue
        acc = 1.0
        for u in range(s):
            acc *= <double>(i - u)
        w[i] = sqrt(acc)


cdef double complex _moment(const double complex[:, ::1] amps,
                            Py_ssize_t k, Py_ssize_t l, Py_ssize_t p, Py_ssize_t q,
                            double[::1] wk, double[::1] wl,
                            double[::1] wp, double[::1] wq) noexcept nogil:
    cdef Py_ssize_t d = amps.shape[0]
    cdef Py_ssize_t na = d - (k if k > l else l)
    cdef Py_ssize_t nb = d - (p if p > q else q)
    cdef Py_ssize_t i, j
    cdef double complex acc = 0
    cdef double complex x, y
    cdef double wa
    if na <= 0 or nb <= 0:
        return acc
    for i in range(na):
        wa = wk[i + k] * wl[i + l]
        if wa == 0.0:
            continue
        for j in range(nb):
            x = amps[i + k, j + p]
            y = amps[i + l, j + q]
            if x == 0 or y == 0:
                continue
            acc = acc + (x.real - 1j * x.imag) * y * (wa * wp[j + p] * wq[j + q])
    return acc


def moment(amps, int k, int l, int p, int q):
    cdef const double complex[:, ::1] a = np.ascontiguousarray(amps, dtype=np.complex128)
    cdef Py_ssize_t d = a.shape[0]
    wk = np.empty(d); wl = np.empty(d); wp = np.empty(d); wq = np.empty(d)
    _weights(wk, k, d); _weights(wl, l, d); _weights(wp, p, d); _weights(wq, q, d)
    return complex(_moment(a, k, l, p, q, wk, wl, wp, wq))


def moments(amps, monos):
    cdef const double complex[:, ::1] a = np.ascontiguousarray(amps, dtype=np.complex128)
    cdef cnp.int64_t[:, ::1] m = np.ascontiguousarray(monos, dtype=np.int64).reshape(-1, 4)
    cdef Py_ssize_t d = a.shape[0]
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t r, s
    for r in range(n):
        for s in range(4):
            if m[r, s] > top:
                top = m[r, s]
    # weight table indexed by exponent
    cdef double[:, ::1] w = np.empty((top + 1, d))
    for s in range(top + 1):
        _weights(w[s], s, d)
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for r in range(n):
            o[r] = _moment(a, m[r, 0], m[r, 1], m[r, 2], m[r, 3],
                           w[m[r, 0]], w[m[r, 1]], w[m[r, 2]], w[m[r, 3]])
    return out
