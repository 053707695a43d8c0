# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernel.

Same contract as fucik._sweep_py.sweep_pattern: per sweep value, LU-based
determinant evaluation at Chebyshev nodes, interpolation to polynomial
coefficients, and companion-matrix eigenvalues for the real roots.  All
LAPACK calls go through scipy's cython_lapack bindings and run without the
GIL, so sweeps can be dispatched from a thread pool.

Buffer sizes are fixed for n <= 16; the tracer caps n at 12.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs
from scipy.linalg.cython_lapack cimport dgeev, dgetrf

cnp.import_array()


cdef double _det(double* M, int n, int* ipiv) noexcept nogil:
    """Determinant via LU with partial pivoting; M is overwritten."""
    cdef int info = 0
    cdef int i
    cdef double det = 1.0
    dgetrf(&n, &n, M, &n, ipiv, &info)
    if info > 0:
        return 0.0
    for i in range(n):
        det *= M[i * n + i]
        if ipiv[i] != i + 1:
            det = -det
    return det


def sweep_pattern(A, dfix, droot, values, double lo, double hi, double pad,
                  double im_tol, double trim_tol):
    A = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[:, ::1] Av = A
    cdef double[::1] dfv = np.ascontiguousarray(dfix, dtype=np.float64)
    cdef double[::1] drv = np.ascontiguousarray(droot, dtype=np.float64)
    cdef double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)

    cdef int n = Av.shape[0]
    cdef int G = vals.shape[0]
    cdef int m = 0
    cdef int i, j, k, g, deg, info, cnt
    for i in range(n):
        if drv[i] != 0.0:
            m += 1
    if m == 0 or G == 0 or n > 16:
        return np.empty(0, dtype=np.intp), np.empty(0)

    cdef double mid = 0.5 * (lo + hi)
    cdef double half = 0.5 * (hi - lo)
    if half <= 0.0:
        half = 1e-300
    tnodes_np = np.cos(np.pi * (2.0 * np.arange(m + 1) + 1.0) / (2.0 * (m + 1)))
    # inverse Vandermonde maps determinant values to ascending coefficients
    vinv_np = np.ascontiguousarray(
        np.linalg.inv(np.vander(tnodes_np, m + 1, increasing=True)))
    cdef double[::1] tnodes = np.ascontiguousarray(tnodes_np)
    cdef double[:, ::1] vinv = vinv_np

    out_idx_np = np.empty(G * m, dtype=np.intp)
    out_root_np = np.empty(G * m, dtype=np.float64)
    cdef cnp.intp_t[::1] out_idx = out_idx_np
    cdef double[::1] out_root = out_root_np

    cdef double M[256]
    cdef double comp[256]
    cdef double dets[17]
    cdef double coefs[17]
    cdef double wr[16]
    cdef double wi[16]
    cdef double work[256]
    cdef int ipiv[16]
    cdef int lwork = 256
    cdef int ldv = 1
    cdef char jobn = b'N'
    cdef double a, b, mx, c, tpad
    cdef double vdummy[1]

    tpad = 1.0 + pad / half
    cnt = 0
    with nogil:
        for g in range(G):
            a = vals[g]
            for k in range(m + 1):
                b = mid + half * tnodes[k]
                for i in range(n):
                    for j in range(n):
                        # det is transpose-invariant so memory order is moot
                        M[i * n + j] = Av[i, j]
                    M[i * n + i] -= a * dfv[i] + b * drv[i]
                dets[k] = _det(M, n, ipiv)
            mx = 0.0
            for k in range(m + 1):
                c = 0.0
                for j in range(m + 1):
                    c += vinv[k, j] * dets[j]
                coefs[k] = c
                if fabs(c) > mx:
                    mx = fabs(c)
            if mx <= 1e-300:
                continue  # det vanishes identically in the root variable here
            deg = m
            while deg > 0 and fabs(coefs[deg]) <= trim_tol * mx:
                deg -= 1
            if deg == 0:
                continue
            # companion matrix, column-major for dgeev
            for i in range(deg * deg):
                comp[i] = 0.0
            for i in range(deg - 1):
                comp[i * deg + i + 1] = 1.0
            for i in range(deg):
                comp[(deg - 1) * deg + i] = -coefs[i] / coefs[deg]
            dgeev(&jobn, &jobn, &deg, comp, &deg, wr, wi,
                  vdummy, &ldv, vdummy, &ldv, work, &lwork, &info)
            if info != 0:
                continue
            for i in range(deg):
                if fabs(wi[i]) <= im_tol * (1.0 + fabs(wr[i])) and fabs(wr[i]) <= tpad:
                    out_idx[cnt] = g
                    out_root[cnt] = mid + half * wr[i]
                    cnt += 1

    idx = out_idx_np[:cnt].copy()
    roots = out_root_np[:cnt].copy()
    order = np.lexsort((roots, idx))
    return idx[order], roots[order]
