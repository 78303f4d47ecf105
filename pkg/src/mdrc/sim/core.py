"""Closed-loop simulation, analytic predictions and trace metrics."""

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyTrace, HorizonZero, MissingGain
from ..matlin import mat_inverse
from ..observer import EsoState
from ..plant import extend
from ..synthesis import gesobc_gain
from .disturbance import DisturbanceSignal
from .kernel import run_closed_loop

LAWS = (
    "known_preview",
    "known_causal",
    "eso_state_feedback",
    "eso_output_feedback",
    "gesobc_baseline",
    "feedback_only",
)
ESO_LAWS = ("eso_state_feedback", "eso_output_feedback")


@dataclass(frozen=True)
class Scenario:
    law: str
    plant: object
    gains: object
    disturbance: DisturbanceSignal
    x0: np.ndarray
    horizon: int
    observer_init: EsoState = None
    sample_period: float = 1.0
    gesobc_K_d: float = None

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown law {self.law!r}; expected one of {LAWS}")
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float).reshape(2, 1))


@dataclass
class SimTrace:
    law: str
    sample_period: float
    x: np.ndarray  # (N+1, 2)
    u: np.ndarray
    d: np.ndarray
    y_o: np.ndarray
    y: np.ndarray  # (N+1, r)
    x_hat: np.ndarray = None  # (N+1, 2), ESO laws only
    d_hat: np.ndarray = None
    e: np.ndarray = None  # (N+1, 3): x_hat - x, d_hat - d

    def __len__(self):
        return len(self.u)

    @property
    def k(self):
        return np.arange(len(self.u))

    @property
    def t(self):
        return self.k * self.sample_period

    @property
    def has_observer(self):
        return self.x_hat is not None


def _law_coefficients(sc):
    g = sc.gains
    if g is None or getattr(g, "K", None) is None:
        raise MissingGain("scenario needs a state-feedback gain K")
    law = sc.law
    if law == "feedback_only":
        return (False, 0.0, 0.0, 0.0, False)
    if law == "known_preview":
        if g.g0 is None or g.g1 is None:
            raise MissingGain("known_preview needs g0 and g1")
        return (False, g.g0, g.g1, 0.0, False)
    if law == "known_causal":
        if g.K_d is None:
            raise MissingGain("known_causal needs K_d")
        return (False, g.K_d, 0.0, 0.0, False)
    if law == "gesobc_baseline":
        k_ges = sc.gesobc_K_d
        if k_ges is None:
            p = sc.plant
            k_ges = gesobc_gain(p.A, p.b_u, p.b_d, p.c_o, g.K)
        return (False, k_ges, 0.0, 0.0, False)
    if g.L_bar is None:
        raise MissingGain(f"{law} needs an observer gain L_bar")
    if g.K_d is None:
        raise MissingGain(f"{law} needs K_d")
    return (law == "eso_output_feedback", 0.0, 0.0, g.K_d, True)


def simulate(sc):
    """Run ``sc`` for ``horizon`` steps and return a trace of ``horizon + 1`` samples."""
    if sc.horizon <= 0:
        raise HorizonZero("horizon must be at least one step")
    law = _law_coefficients(sc)
    p = sc.plant
    n = sc.horizon
    d = sc.disturbance.sequence(n + 2)
    if law[4]:
        es = extend(p)
        L_bar = np.atleast_2d(np.asarray(sc.gains.L_bar, dtype=float))
        A_bar = es.A_bar
        z0 = (sc.observer_init or EsoState.zero()).as_vector().ravel()
    else:
        L_bar = np.zeros((3, p.r))
        A_bar = np.zeros((3, 3))
        z0 = np.zeros(3)
    X, U, Z = run_closed_loop(
        p.A, p.b_u, p.b_d, sc.gains.K, p.C_m, L_bar, A_bar, law, d, sc.x0.ravel(), z0, n
    )
    trace = SimTrace(
        law=sc.law,
        sample_period=sc.sample_period,
        x=X,
        u=U,
        d=d[: n + 1],
        y_o=X @ p.c_o.ravel(),
        y=X @ p.C_m.T,
    )
    if sc.law in ESO_LAWS:
        trace.x_hat = Z[:, :2]
        trace.d_hat = Z[:, 2].copy()
        trace.e = Z - np.column_stack([X, trace.d])
    return trace


def disturbance_free_reference(p, K, x_pre, steps):
    """``c_o (A + b_u K)^m x_pre`` for ``m = 1..steps``."""
    A_cl = p.A + p.b_u @ np.atleast_2d(K)
    x = np.asarray(x_pre, dtype=float).reshape(2, 1)
    out = np.empty(steps)
    for m in range(steps):
        x = A_cl @ x
        out[m] = (p.c_o @ x).item()
    return out


def steady_state_prediction(p, K, K_d, d_limit):
    """Limit state and regulated output under ``u = K x + K_d d`` with ``d -> d_limit``."""
    A_cl = p.A + p.b_u @ np.atleast_2d(K)
    x_inf = mat_inverse(np.eye(2) - A_cl) @ (p.b_d + p.b_u * K_d) * d_limit
    return x_inf, (p.c_o @ x_inf).item()


@dataclass(frozen=True)
class Metrics:
    peak_dev: float
    settling_steps: int
    steady_bias: float


def trace_metrics(t, onset, band, signal="y_o"):
    """Post-onset response metrics of one signal of a trace.

    ``t`` may be a :class:`SimTrace` (``signal`` names ``y_o``, ``x1``, ``x2``,
    ``u``, ``d_hat``) or a plain 1-D array. The reference level is the sample
    at ``onset``, the last one the disturbance has not yet reached.
    ``settling_steps`` counts from ``onset`` to the first sample after which the
    signal stays within ``band`` of its final value.
    """
    if isinstance(t, SimTrace):
        if signal in ("x1", "x2"):
            values = t.x[:, int(signal[1]) - 1]
        else:
            values = getattr(t, signal)
    else:
        values = t
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise EmptyTrace("trace has no samples")
    if not 0 <= onset < values.size - 1:
        raise ValueError("onset must lie before the end of the trace")
    ref = values[onset]
    after = values[onset:]
    peak = float(np.max(np.abs(after - ref)))
    outside = np.nonzero(np.abs(after - after[-1]) > band)[0]
    settling = int(outside[-1] + 1) if outside.size else 0
    tail = max(1, int(round(0.05 * values.size)))
    bias = float(np.mean(values[-tail:]) - ref)
    return Metrics(peak, settling, bias)


def bibs_bound(A_cl, x0_norm, forcing_norm):
    """Constants of ``sup ||x(k)|| <= C0 ||x0|| + C1 F`` for ``x(k+1) = A_cl x(k) + f(k)``, ``||f|| <= F``.

    Uses spectral norms of powers of ``A_cl``. With the first ``N`` such that
    ``q = ||A_cl^N|| < 1/2``: ``sup_k ||A_cl^k|| <= max_{m<N} ||A_cl^m||`` and
    ``sum_k ||A_cl^k|| <= sum_{m<N} ||A_cl^m|| / (1 - q)``.
    Returns ``(C0, C1, bound)``.
    """
    A_cl = np.asarray(A_cl, dtype=float)
    power = np.eye(A_cl.shape[0])
    norms = []
    while True:
        q = np.linalg.norm(power, 2)
        if norms and q < 0.5:
            break
        norms.append(q)
        power = power @ A_cl
        if len(norms) > 1_000_000:
            raise ValueError("closed loop is not Schur")
    C0 = max(norms)
    C1 = sum(norms) / (1.0 - q)
    return C0, C1, C0 * x0_norm + C1 * forcing_norm
