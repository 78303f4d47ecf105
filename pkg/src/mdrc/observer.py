"""Generalized extended state observer in predictor form."""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, ShapeMismatch


@dataclass(frozen=True)
class EsoState:
    x_hat: np.ndarray
    d_hat: float

    def __post_init__(self):
        x_hat = np.asarray(self.x_hat, dtype=float).reshape(2, 1)
        if not (np.all(np.isfinite(x_hat)) and np.isfinite(self.d_hat)):
            raise NonFinite("observer state must be finite")
        object.__setattr__(self, "x_hat", x_hat)
        object.__setattr__(self, "d_hat", float(self.d_hat))

    @classmethod
    def zero(cls):
        return cls(np.zeros((2, 1)), 0.0)

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float).reshape(3)
        return cls(v[:2].reshape(2, 1), v[2])

    def as_vector(self):
        return np.vstack([self.x_hat, [[self.d_hat]]])


@dataclass(frozen=True)
class ErrorState:
    """Estimate minus truth, for the state and the disturbance."""

    e_x: np.ndarray
    e_d: float

    @classmethod
    def between(cls, estimate, x, d):
        return cls(estimate.x_hat - np.asarray(x, dtype=float).reshape(2, 1), estimate.d_hat - float(d))

    def as_vector(self):
        return np.vstack([self.e_x, [[self.e_d]]])


def _check(es, L_bar, y=None):
    L_bar = np.atleast_2d(np.asarray(L_bar, dtype=float))
    if L_bar.shape != (3, es.r):
        raise ShapeMismatch(f"L_bar must be 3x{es.r}, got {L_bar.shape}")
    if y is not None:
        y = np.asarray(y, dtype=float)
        if y.size != es.r:
            raise ShapeMismatch(f"measurement must have {es.r} entries, got {y.size}")
        y = y.reshape(es.r, 1)
    return L_bar, y


def eso_step(s, u, y, es, L_bar):
    """Advance the observer one sample: consumes ``u(k), y(k)`` and returns the estimate for ``k+1``."""
    L_bar, y = _check(es, L_bar, y)
    z = s.as_vector()
    z_next = es.A_bar @ z + es.b_u_bar * float(u) + L_bar @ (y - es.C_bar @ z)
    return EsoState.from_vector(z_next)


def error_dynamics_matrix(es, L_bar):
    """``A_bar - L_bar C_bar``; the error obeys ``e(k+1) = (A_bar - L_bar C_bar) e(k) - E h(k)``."""
    L_bar, _ = _check(es, L_bar)
    return es.A_bar - L_bar @ es.C_bar
