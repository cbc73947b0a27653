# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: one-sided Jacobi sweep and CSR block products."""

from libc.math cimport fabs, sqrt


def jacobi_sweep(double[:, ::1] at, double[:, ::1] vt, double rot_tol):
    """Run one cyclic sweep of one-sided Jacobi rotations in place.

    ``at`` holds the working matrix transposed (row i is column i) and
    ``vt`` accumulates the right rotations the same way.  Returns the
    largest normalized off-diagonal ``|a_i.a_j| / (|a_i| |a_j|)`` seen
    before rotating.
    """
    cdef Py_ssize_t n = at.shape[0]
    cdef Py_ssize_t m = at.shape[1]
    cdef Py_ssize_t nv = vt.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double alpha, beta, gamma, ratio, zeta, t, c, s, x, y
    cdef double worst = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            alpha = 0.0
            beta = 0.0
            gamma = 0.0
            for k in range(m):
                x = at[i, k]
                y = at[j, k]
                alpha += x * x
                beta += y * y
                gamma += x * y
            if gamma == 0.0 or alpha == 0.0 or beta == 0.0:
                continue
            ratio = fabs(gamma) / sqrt(alpha * beta)
            if ratio > worst:
                worst = ratio
            if ratio <= rot_tol:
                continue
            zeta = (beta - alpha) / (2.0 * gamma)
            if zeta >= 0.0:
                t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
            else:
                t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
            c = 1.0 / sqrt(1.0 + t * t)
            s = c * t
            for k in range(m):
                x = at[i, k]
                y = at[j, k]
                at[i, k] = c * x - s * y
                at[j, k] = s * x + c * y
            for k in range(nv):
                x = vt[i, k]
                y = vt[j, k]
                vt[i, k] = c * x - s * y
                vt[j, k] = s * x + c * y
    return worst


def csr_matmat(const long[::1] indptr, const long[::1] indices, const double[::1] data,
               const double[:, ::1] x, double[:, ::1] out):
    """``out = A @ x`` for a CSR matrix ``A``; ``out`` is overwritten."""
    cdef Py_ssize_t nrows = indptr.shape[0] - 1
    cdef Py_ssize_t l = x.shape[1]
    cdef Py_ssize_t r, p, q, col
    cdef double v
    for r in range(nrows):
        for q in range(l):
            out[r, q] = 0.0
        for p in range(indptr[r], indptr[r + 1]):
            col = indices[p]
            v = data[p]
            for q in range(l):
                out[r, q] += v * x[col, q]
