"""Controller and observer gain synthesis.

Covers state feedback by pole placement, the controllability-based
compensation matrix and its feedforward coefficients, the static DC-nulling
gain used by the GESOBC baseline, and observer gain design/validation for the
extended system.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ObserverUnstable,
    ShapeMismatch,
    SingularMatrix,
    Uncontrollable,
    Unobservable,
    UnstableRequest,
    UnsupportedShape,
    ZeroDcGain,
)
from .matlin import as_mat, is_schur, mat_inverse, spectral_radius
from .plant import extend, is_observable

DEFAULT_OBSERVER_POLES = (0.3, 0.4, 0.5)
_CONJ_TOL = 1e-12


def _real_poly(poles):
    """Monic characteristic polynomial coefficients (highest power first) of ``poles``.

    Raises if the set is not closed under conjugation or a pole is not strictly stable.
    """
    poles = [complex(p) for p in poles]
    for p in poles:
        if abs(p) >= 1.0:
            raise UnstableRequest(f"requested pole {p} has modulus >= 1")
    remaining = list(poles)
    while remaining:
        p = remaining.pop(0)
        if abs(p.imag) <= _CONJ_TOL:
            continue
        match = min(range(len(remaining)), key=lambda i: abs(remaining[i] - p.conjugate()), default=None)
        if match is None or abs(remaining[match] - p.conjugate()) > 1e-9 * max(1.0, abs(p)):
            raise ValueError(f"pole set is not closed under conjugation (unpaired {p})")
        remaining.pop(match)
    coeffs = np.array([1.0 + 0j])
    for p in poles:
        coeffs = np.convolve(coeffs, [1.0, -p])
    return coeffs.real


def _poly_of_matrix(coeffs, M):
    n = M.shape[0]
    out = np.zeros_like(M)
    for c in coeffs:
        out = out @ M + c * np.eye(n)
    return out


def place_poles(A, b_u, p1, p2):
    """State-feedback row ``K`` placing the eigenvalues of ``A + b_u K`` at ``p1, p2``.

    Ackermann's formula, with the sign convention ``u = K x``.
    """
    A = as_mat(A, (2, 2), "A")
    b_u = as_mat(b_u, (2, 1), "b_u")
    coeffs = _real_poly([p1, p2])
    try:
        ctrb_inv = mat_inverse(np.hstack([b_u, A @ b_u]))
    except SingularMatrix as exc:
        raise Uncontrollable("[b_u, A b_u] is singular") from exc
    return -np.array([[0.0, 1.0]]) @ ctrb_inv @ _poly_of_matrix(coeffs, A)


def compensation_matrix(A, b_u, K):
    """``K_p = [b_u, (A + b_u K) b_u]^-1``."""
    A = as_mat(A, (2, 2), "A")
    b_u = as_mat(b_u, (2, 1), "b_u")
    K = as_mat(np.atleast_2d(K), (1, 2), "K")
    P = np.hstack([b_u, (A + b_u @ K) @ b_u])
    return mat_inverse(P)


def feedforward_gains(K_p, b_d):
    """Coefficients on ``d(k)`` and ``d(k+1)`` and their causal sum ``K_d``."""
    w = np.asarray(K_p, dtype=float) @ np.asarray(b_d, dtype=float).reshape(2, 1)
    g0 = -float(w[0, 0])
    g1 = -float(w[1, 0])
    return g0, g1, g0 + g1


def gesobc_gain(A, b_u, b_d, c_o, K):
    """Static compensation gain that nulls the DC map from ``d`` to ``y_o``.

    ``-[c_o (I - A_cl)^-1 b_u]^-1 c_o (I - A_cl)^-1 b_d`` with ``A_cl = A + b_u K``.
    """
    A = as_mat(A, (2, 2), "A")
    b_u = as_mat(b_u, (2, 1), "b_u")
    b_d = as_mat(b_d, (2, 1), "b_d")
    c_o = as_mat(np.atleast_2d(c_o), (1, 2), "c_o")
    K = as_mat(np.atleast_2d(K), (1, 2), "K")
    resolvent = mat_inverse(np.eye(2) - (A + b_u @ K))
    dc_u = (c_o @ resolvent @ b_u).item()
    if abs(dc_u) < 1e-12:
        raise ZeroDcGain(f"DC gain from u to y_o is {dc_u:.3e}")
    return -(c_o @ resolvent @ b_d).item() / dc_u


def _dual_ackermann(A, c, poles):
    # observer gain for single-output (A, c) via Ackermann on (A', c')
    n = A.shape[0]
    obs = np.vstack([c @ np.linalg.matrix_power(A, i) for i in range(n)])
    try:
        obs_inv = mat_inverse(obs)
    except SingularMatrix as exc:
        raise Unobservable("observability matrix is singular") from exc
    unit = np.zeros((n, 1))
    unit[-1, 0] = 1.0
    return _poly_of_matrix(_real_poly(poles), A) @ obs_inv @ unit


def design_observer_gain(es, desired_poles=DEFAULT_OBSERVER_POLES):
    """Observer gain placing the eigenvalues of ``A_bar - L_bar C_bar`` (single output only)."""
    if es.r != 1:
        raise UnsupportedShape("observer design needs a single measured output; supply L_bar for r = 2")
    if len(desired_poles) != 3:
        raise ValueError("three observer poles are required")
    for p in desired_poles:
        if abs(complex(p)) >= 1.0:
            raise UnstableRequest(f"requested observer pole {p} has modulus >= 1")
    if not is_observable(es):
        raise Unobservable("(A_bar, C_bar) is not observable")
    return _dual_ackermann(es.A_bar, es.C_bar, desired_poles)


def _check_observer_shape(es, L_bar):
    L_bar = np.atleast_2d(np.asarray(L_bar, dtype=float))
    if L_bar.shape != (3, es.r):
        raise ShapeMismatch(f"L_bar must be 3x{es.r}, got {L_bar.shape}")
    return L_bar


def validate_observer_gain(es, L_bar):
    """Spectral radius of ``A_bar - L_bar C_bar``; below 1 means the ESO converges."""
    L_bar = _check_observer_shape(es, L_bar)
    return spectral_radius(es.A_bar - L_bar @ es.C_bar)


@dataclass(frozen=True)
class GainSet:
    K: np.ndarray
    K_p: np.ndarray
    g0: float
    g1: float
    K_d: float
    L_bar: np.ndarray = None

    def with_observer(self, L_bar):
        return GainSet(self.K, self.K_p, self.g0, self.g1, self.K_d, np.array(L_bar, dtype=float))


def synthesize(plant, K, L_bar=None, check_observer=True):
    """Assemble a :class:`GainSet` for ``plant`` from a state-feedback row ``K``.

    Checks that ``A + b_u K`` is Schur, that ``K_p`` really inverts ``P``, and,
    if ``L_bar`` is given, that the observer error dynamics are Schur.
    """
    K = as_mat(np.atleast_2d(K), (1, 2), "K")
    A_cl = plant.A + plant.b_u @ K
    if not is_schur(A_cl):
        raise UnstableRequest(f"A + b_u K is not Schur (spectral radius {spectral_radius(A_cl):.6f})")
    K_p = compensation_matrix(plant.A, plant.b_u, K)
    P = np.hstack([plant.b_u, A_cl @ plant.b_u])
    if np.max(np.abs(K_p @ P - np.eye(2))) > 1e-8:
        raise SingularMatrix("compensation matrix fails K_p P = I check")
    g0, g1, K_d = feedforward_gains(K_p, plant.b_d)
    if L_bar is not None:
        L_bar = np.atleast_2d(np.asarray(L_bar, dtype=float))
        es = extend(plant)
        if check_observer:
            rho = validate_observer_gain(es, L_bar)
            if rho >= 1.0:
                raise ObserverUnstable(f"A_bar - L_bar C_bar is not Schur (spectral radius {rho:.6f})")
    return GainSet(K, K_p, g0, g1, K_d, L_bar)

