"""Pure-Python closed-loop recursion; mirrors ``_kernel.pyx`` operation for operation."""

import numpy as np


def run_closed_loop(A, b_u, b_d, K, C_m, L_bar, A_bar, law, d, x0, z0, horizon):
    """Iterate plant and (optionally) observer for ``horizon`` steps.

    ``law`` is ``(use_xhat, c_now, c_next, c_hat, run_observer)``; the input is
    ``u = K.s + c_now d(k) + c_next d(k+1) + c_hat d_hat(k)`` where ``s`` is the
    true or estimated state. ``d`` needs ``horizon + 2`` samples.
    Returns ``(X, U, Z)`` with ``Z`` the observer states (zeros if not run).
    """
    use_xhat, c_now, c_next, c_hat, run_observer = law
    A = [[float(v) for v in row] for row in np.asarray(A)]
    bu = [float(v) for v in np.asarray(b_u).ravel()]
    bd = [float(v) for v in np.asarray(b_d).ravel()]
    Kr = [float(v) for v in np.asarray(K).ravel()]
    C = [[float(v) for v in row] for row in np.atleast_2d(C_m)]
    L = [[float(v) for v in row] for row in np.atleast_2d(L_bar)]
    Ab = [[float(v) for v in row] for row in np.asarray(A_bar)]
    dd = [float(v) for v in d]
    r = len(C)
    c_now = float(c_now)
    c_next = float(c_next)
    c_hat = float(c_hat)

    X = np.zeros((horizon + 1, 2))
    U = np.zeros(horizon + 1)
    Z = np.zeros((horizon + 1, 3))
    x0_, x1_ = float(x0[0]), float(x0[1])
    z0_, z1_, z2_ = float(z0[0]), float(z0[1]), float(z0[2])
    innov = [0.0, 0.0]
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
                y_i = C[i][0] * x0_ + C[i][1] * x1_
                innov[i] = y_i - (C[i][0] * z0_ + C[i][1] * z1_)
            n0 = Ab[0][0] * z0_ + Ab[0][1] * z1_ + Ab[0][2] * z2_ + bu[0] * u
            n1 = Ab[1][0] * z0_ + Ab[1][1] * z1_ + Ab[1][2] * z2_ + bu[1] * u
            n2 = Ab[2][0] * z0_ + Ab[2][1] * z1_ + Ab[2][2] * z2_
            for i in range(r):
                n0 = n0 + L[0][i] * innov[i]
                n1 = n1 + L[1][i] * innov[i]
                n2 = n2 + L[2][i] * innov[i]
            z0_, z1_, z2_ = n0, n1, n2
        nx0 = A[0][0] * x0_ + A[0][1] * x1_ + bu[0] * u + bd[0] * dd[k]
        nx1 = A[1][0] * x0_ + A[1][1] * x1_ + bu[1] * u + bd[1] * dd[k]
        x0_, x1_ = nx0, nx1
    return X, U, Z
