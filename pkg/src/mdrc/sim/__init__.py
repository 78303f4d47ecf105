from .core import (
    ESO_LAWS,
    LAWS,
    Metrics,
    Scenario,
    SimTrace,
    bibs_bound,
    disturbance_free_reference,
    simulate,
    steady_state_prediction,
    trace_metrics,
)
from .disturbance import DisturbanceSignal
from .kernel import BACKEND

__all__ = [
    "BACKEND",
    "DisturbanceSignal",
    "ESO_LAWS",
    "LAWS",
    "Metrics",
    "Scenario",
    "SimTrace",
    "bibs_bound",
    "disturbance_free_reference",
    "simulate",
    "steady_state_prediction",
    "trace_metrics",
]
