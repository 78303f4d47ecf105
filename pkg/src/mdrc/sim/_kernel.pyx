# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closed-loop recursion; same arithmetic order as ``_kernel_py``."""

import numpy as np


def run_closed_loop(A, b_u, b_d, K, C_m, L_bar, A_bar, law, d, x0, z0, Py_ssize_t horizon):
    cdef bint use_xhat = bool(law[0])
    cdef double c_now = float(law[1])
    cdef double c_next = float(law[2])
    cdef double c_hat = float(law[3])
    cdef bint run_observer = bool(law[4])

    cdef const double[:, ::1] Am = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] bu = np.ascontiguousarray(np.asarray(b_u, dtype=np.float64).ravel())
    cdef const double[::1] bd = np.ascontiguousarray(np.asarray(b_d, dtype=np.float64).ravel())
    cdef const double[::1] Kr = np.ascontiguousarray(np.asarray(K, dtype=np.float64).ravel())
    cdef const double[:, ::1] C = np.ascontiguousarray(np.atleast_2d(C_m), dtype=np.float64)
    cdef const double[:, ::1] L = np.ascontiguousarray(np.atleast_2d(L_bar), dtype=np.float64)
    cdef const double[:, ::1] Ab = np.ascontiguousarray(A_bar, dtype=np.float64)
    cdef const double[::1] dd = np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t r = C.shape[0]

    X_arr = np.zeros((horizon + 1, 2))
    U_arr = np.zeros(horizon + 1)
    Z_arr = np.zeros((horizon + 1, 3))
    cdef double[:, ::1] X = X_arr
    cdef double[::1] U = U_arr
    cdef double[:, ::1] Z = Z_arr

    cdef double x0_ = float(x0[0]), x1_ = float(x0[1])
    cdef double z0_ = float(z0[0]), z1_ = float(z0[1]), z2_ = float(z0[2])
    cdef double u, y_i, n0, n1, n2, nx0, nx1
    cdef double innov[2]
    cdef Py_ssize_t k, i
    innov[0] = 0.0
    innov[1] = 0.0

    for k in range(horizon + 1):
        X[k, 0] = x0_
        X[k, 1] = x1_
        Z[k, 0] = z0_
        Z[k, 1] = z1_
        Z[k, 2] = z2_
        if use_xhat:
            u = Kr[0] * z0_ + Kr[1] * z1_
        else:
            u = Kr[0] * x0_ + Kr[1] * x1_
        u = u + c_now * dd[k] + c_next * dd[k + 1] + c_hat * z2_
        U[k] = u
        if k == horizon:
            break
        if run_observer:
            for i in range(r):
                y_i = C[i, 0] * x0_ + C[i, 1] * x1_
                innov[i] = y_i - (C[i, 0] * z0_ + C[i, 1] * z1_)
            n0 = Ab[0, 0] * z0_ + Ab[0, 1] * z1_ + Ab[0, 2] * z2_ + bu[0] * u
            n1 = Ab[1, 0] * z0_ + Ab[1, 1] * z1_ + Ab[1, 2] * z2_ + bu[1] * u
            n2 = Ab[2, 0] * z0_ + Ab[2, 1] * z1_ + Ab[2, 2] * z2_
            for i in range(r):
                n0 = n0 + L[0, i] * innov[i]
                n1 = n1 + L[1, i] * innov[i]
                n2 = n2 + L[2, i] * innov[i]
            z0_ = n0
            z1_ = n1
            z2_ = n2
        nx0 = Am[0, 0] * x0_ + Am[0, 1] * x1_ + bu[0] * u + bd[0] * dd[k]
        nx1 = Am[1, 0] * x0_ + Am[1, 1] * x1_ + bu[1] * u + bd[1] * dd[k]
        x0_ = nx0
        x1_ = nx1
    return X_arr, U_arr, Z_arr
