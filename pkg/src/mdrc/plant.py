"""Second-order discrete plant with a disturbance channel, and its ESO extension.

The plant is::

    x(k+1) = A x(k) + b_u u(k) + b_d d(k)
    y(k)   = C_m x(k)
    y_o(k) = c_o x(k)

and the extended system treats ``d`` as a third state driven by its increment
``h(k) = d(k+1) - d(k)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPlant
from .matlin import as_mat, matrix_rank

STRUCTURAL_TOL = 1e-12
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class PlantSpec:
    A: np.ndarray
    b_u: np.ndarray
    b_d: np.ndarray
    C_m: np.ndarray
    c_o: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_mat(self.A, (2, 2), "A"))
        object.__setattr__(self, "b_u", as_mat(self.b_u, (2, 1), "b_u"))
        object.__setattr__(self, "b_d", as_mat(self.b_d, (2, 1), "b_d"))
        C_m = as_mat(np.atleast_2d(np.asarray(self.C_m, dtype=float)), (None, 2), "C_m")
        if C_m.shape[0] not in (1, 2):
            raise InvalidPlant(f"C_m must have 1 or 2 rows, got {C_m.shape[0]}")
        object.__setattr__(self, "C_m", C_m)
        object.__setattr__(self, "c_o", as_mat(np.atleast_2d(np.asarray(self.c_o, dtype=float)), (1, 2), "c_o"))

    @property
    def r(self):
        return self.C_m.shape[0]


@dataclass(frozen=True)
class ValidationReport:
    controllable: bool
    assumption1: bool  # c_o b_u == 0
    mismatched: bool  # b_u' b_d == 0, informational
    nonzero_channels: bool
    messages: tuple = field(default=())

    @property
    def ok(self):
        """All required checks pass (mismatch is informational only)."""
        return self.controllable and self.assumption1 and self.nonzero_channels

    def failures(self):
        names = []
        if not self.nonzero_channels:
            names.append("nonzero input/disturbance channels")
        if not self.controllable:
            names.append("controllability of (A, b_u)")
        if not self.assumption1:
            names.append("Assumption 1 (c_o b_u = 0)")
        return names


def _normalized_zero(u, v):
    scale = max(float(np.max(np.abs(u))), float(np.max(np.abs(v))))
    if scale == 0.0:
        return True
    return abs(float((u.ravel() / scale) @ (v.ravel() / scale))) <= STRUCTURAL_TOL


def controllability_matrix(A, b_u):
    return np.hstack([b_u, A @ b_u])


def validate_plant(p):
    nonzero = bool(np.any(p.b_u != 0.0) and np.any(p.b_d != 0.0))
    controllable = matrix_rank(controllability_matrix(p.A, p.b_u), RANK_RTOL) == 2
    assumption1 = _normalized_zero(p.c_o.T, p.b_u)
    mismatched = _normalized_zero(p.b_u, p.b_d)
    messages = []
    if not nonzero:
        messages.append("b_u and b_d must both be nonzero")
    if not controllable:
        messages.append("(A, b_u) is not controllable: rank [b_u, A b_u] < 2")
    if not assumption1:
        messages.append(f"Assumption 1 violated: c_o b_u = {(p.c_o @ p.b_u).item():.6g}, expected 0")
    if not mismatched:
        messages.append("disturbance is not mismatched (b_u' b_d != 0); matched-case compensation applies")
    return ValidationReport(controllable, assumption1, mismatched, nonzero, tuple(messages))


@dataclass(frozen=True)
class ExtendedSystem:
    A_bar: np.ndarray
    b_u_bar: np.ndarray
    E: np.ndarray
    C_bar: np.ndarray

    @property
    def r(self):
        return self.C_bar.shape[0]


def extend(p):
    """Build the extended system with the disturbance as third state."""
    report = validate_plant(p)
    if not report.ok:
        raise InvalidPlant("plant failed validation: " + "; ".join(report.failures()))
    A_bar = np.zeros((3, 3))
    A_bar[:2, :2] = p.A
    A_bar[:2, 2:] = p.b_d
    A_bar[2, 2] = 1.0
    b_u_bar = np.vstack([p.b_u, [[0.0]]])
    E = np.array([[0.0], [0.0], [1.0]])
    C_bar = np.hstack([p.C_m, np.zeros((p.r, 1))])
    for m in (A_bar, b_u_bar, E, C_bar):
        m.setflags(write=False)
    return ExtendedSystem(A_bar, b_u_bar, E, C_bar)


def observability_matrix(es):
    C, A = es.C_bar, es.A_bar
    return np.vstack([C, C @ A, C @ A @ A])


def is_observable(es):
    return matrix_rank(observability_matrix(es), RANK_RTOL) == 3
