"""Built-in experiments: the known-disturbance example and the PMDC motor.

Both are defined in samples. The first example's plant already looks like an
``I + T A_c`` sampling of a continuous model with ``T = 0.01 s``, so its
disturbance onset at 0.6 s is sample 60.

The PMDC model uses the usual sign convention, ``L di/dt = -k w - R i + v``
and ``J dw/dt = k i - B w - T_load``, so the state matrix has speed row
``[-B/J, k/J]`` and current row ``[-k/L, -R/L]``.
"""

from dataclasses import dataclass

import numpy as np

from .matlin import euler_discretize, zoh_discretize
from .plant import PlantSpec

# known-disturbance example
EX1_A = [[1.0, 0.01], [-0.02, 0.99]]
EX1_B_U = [[0.0], [0.01]]
EX1_B_D = [[0.01], [0.0]]
EX1_C_M = [[1.0, 0.0], [0.0, 1.0]]
EX1_C_O = [[1.0, 0.0]]
EX1_K = [[-20.0, -4.0]]
EX1_POLES = (0.9750 + 0.0397j, 0.9750 - 0.0397j)
EX1_PERIOD = 0.01
EX1_ONSET = 60
EX1_HORIZON = 300
EX1_MAGNITUDE = 3.0
EX1_X0 = [1.0, 0.0]


@dataclass(frozen=True)
class MotorParameters:
    R_a: float = 0.5  # ohm
    L_a: float = 0.012  # H
    J_m: float = 0.00471  # kg m^2
    B_m: float = 0.002  # N m s/rad
    k: float = 0.5  # K_t = K_b, N m/A and V s/rad
    shaft_power: float = 5e3  # W, informational
    rated_voltage: float = 240.0  # V, informational


PMDC_PERIOD = 0.001
PMDC_K = [[-0.5, -4.0]]
PMDC_L_BAR = [[0.3, 0.1], [0.1, 0.8], [-0.2, -0.05]]
PMDC_LOAD = 5.0  # N m
PMDC_ONSET_TIME = 0.6
PMDC_DURATION = 1.2
PMDC_REPORTED_K_D = 5.3


def example1_plant():
    return PlantSpec(EX1_A, EX1_B_U, EX1_B_D, EX1_C_M, EX1_C_O)


def pmdc_continuous(params=MotorParameters()):
    """``(A_c, b_u, b_d)`` with state ``[speed, current]``, input voltage, disturbance load torque."""
    J, B, k, R, L = params.J_m, params.B_m, params.k, params.R_a, params.L_a
    A_c = np.array([[-B / J, k / J], [-k / L, -R / L]])
    b_u = np.array([[0.0], [1.0 / L]])
    b_d = np.array([[-1.0 / J], [0.0]])
    return A_c, b_u, b_d


def discretize_plant(A_c, b_u, b_d, T, method="euler"):
    """Sample a continuous plant; returns ``(A, b_u, b_d)``.

    ``method`` is ``"euler"`` or ``"zoh"``. Both channels share one
    discretization so the disturbance is held like the input.
    """
    B_c = np.hstack([np.asarray(b_u, dtype=float), np.asarray(b_d, dtype=float)])
    if method == "zoh":
        A, B = zoh_discretize(A_c, B_c, T)
    elif method == "euler":
        A, B = euler_discretize(A_c, B_c, T)
    else:
        raise ValueError(f"unknown discretization {method!r}; expected 'euler' or 'zoh'")
    return A, B[:, :1], B[:, 1:]


def pmdc_plant(method="euler", T=PMDC_PERIOD, params=MotorParameters()):
    A, b_u, b_d = discretize_plant(*pmdc_continuous(params), T, method)
    return PlantSpec(A, b_u, b_d, np.eye(2), [[1.0, 0.0]])
