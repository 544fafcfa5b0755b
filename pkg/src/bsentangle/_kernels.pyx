# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled beam-splitter Fock kernels. Same contract as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def bs_blocks(w, int cutoff):
    """Fock matrix elements of a beam splitter, one block per total photon number.

    ``w`` is the 2x2 matrix with ``B a^dag B^-1 = w00 a^dag + w01 b^dag`` and
    ``B b^dag B^-1 = w10 a^dag + w11 b^dag``. Returns ``z`` of shape
    ``(cutoff + 1,) * 3`` with ``z[N, m, p] = <m, N-m| B |p, N-p>``.
    """
    cdef double complex w00 = w[0][0], w01 = w[0][1], w10 = w[1][0], w11 = w[1][1]
    z_arr = np.zeros((cutoff + 1, cutoff + 1, cutoff + 1), dtype=np.complex128)
    cdef double complex[:, :, ::1] z = z_arr
    cdef double[::1] sq = np.sqrt(np.arange(cutoff + 2, dtype=np.float64))
    cdef Py_ssize_t big_n, m, p, n, q
    cdef double complex va, vb
    z[0, 0, 0] = 1.0
    for big_n in range(cutoff):
        # both raising routes give the same column; the sqrt(p), sqrt(q) weighted mean is an
        # isometry, so rounding does not grow with photon number
        for p in range(big_n + 2):
            q = big_n + 1 - p
            for m in range(big_n + 2):
                n = big_n + 1 - m
                va = 0
                vb = 0
                if p >= 1:
                    if m >= 1:
                        va = va + w00 * sq[m] * z[big_n, m - 1, p - 1]
                    if n >= 1:
                        va = va + w01 * sq[n] * z[big_n, m, p - 1]
                if q >= 1:
                    if m >= 1:
                        vb = vb + w10 * sq[m] * z[big_n, m - 1, p]
                    if n >= 1:
                        vb = vb + w11 * sq[n] * z[big_n, m, p]
                z[big_n + 1, m, p] = (sq[p] * va + sq[q] * vb) / (big_n + 1)
    return z_arr


def bs_apply(psi, z_arr):
    """Apply beam-splitter blocks to two-mode amplitudes ``psi[p, q]``.

    Output has shape ``(da + db - 1, da + db - 1)``; no truncation beyond the input's.
    """
    cdef double complex[:, ::1] ps = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef double complex[:, :, ::1] z = z_arr
    cdef Py_ssize_t da = ps.shape[0], db = ps.shape[1]
    cdef Py_ssize_t top = da + db - 2
    if z.shape[0] <= top:
        raise ValueError("beam-splitter blocks too small for this input")
    out_arr = np.zeros((top + 1, top + 1), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t big_n, m, p, p_lo, p_hi
    cdef double complex acc
    for big_n in range(top + 1):
        p_lo = big_n - (db - 1) if big_n > db - 1 else 0
        p_hi = big_n if big_n < da - 1 else da - 1
        for m in range(big_n + 1):
            acc = 0
            for p in range(p_lo, p_hi + 1):
                acc = acc + z[big_n, m, p] * ps[p, big_n - p]
            out[m, big_n - m] = acc
    return out_arr
