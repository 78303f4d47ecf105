"""Mismatched disturbance rejection for second-order discrete-time SISO systems."""

from .errors import MdrcError
from .plant import ExtendedSystem, PlantSpec, extend, is_observable, validate_plant
from .synthesis import (
    GainSet,
    compensation_matrix,
    design_observer_gain,
    feedforward_gains,
    gesobc_gain,
    place_poles,
    synthesize,
    validate_observer_gain,
)

__version__ = "0.1.0"
