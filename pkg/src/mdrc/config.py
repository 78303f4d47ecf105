"""JSON run configuration: parsing, validation and scenario construction.

Top-level keys: ``plant``, ``law``, ``gains``, ``observer``, ``disturbance``,
``sim``. See ``docs/config.md`` for the full schema.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import MdrcError, ObserverUnstable, UnstableRequest
from .experiments import discretize_plant
from .observer import EsoState
from .plant import PlantSpec, extend, validate_plant
from .sim import LAWS, DisturbanceSignal, Scenario
from .synthesis import design_observer_gain, place_poles, synthesize

TOP_LEVEL = ("plant", "law", "gains", "observer", "disturbance", "sim")


class ParseError(MdrcError, ValueError):
    """The config text is not valid JSON or a field has the wrong type."""


class ValidationError(MdrcError, ValueError):
    """The config parses but describes a plant or gains that fail the checks."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class RunConfig:
    plant: PlantSpec
    law: str
    K: np.ndarray
    L_bar: np.ndarray
    disturbance: DisturbanceSignal
    x0: np.ndarray
    horizon: int
    sample_period: float
    observer_init: EsoState = None
    output: str = None

    def scenario(self):
        gains = synthesize(self.plant, self.K, self.L_bar)
        return Scenario(
            law=self.law,
            plant=self.plant,
            gains=gains,
            disturbance=self.disturbance,
            x0=self.x0,
            horizon=self.horizon,
            observer_init=self.observer_init,
            sample_period=self.sample_period,
        )


def _matrix(obj, path, shape=None):
    try:
        m = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: expected a numeric matrix ({exc})") from None
    if m.ndim == 1:
        m = m.reshape(-1, 1) if shape is None or shape[1] == 1 else m.reshape(1, -1)
    if m.ndim != 2:
        raise ParseError(f"{path}: expected a matrix, got {m.ndim}-dimensional data")
    if shape is not None and any(want is not None and got != want for want, got in zip(shape, m.shape)):
        raise ParseError(f"{path}: expected shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParseError(f"{path}: entries must be finite")
    return m


def _number(obj, path, kind=float):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ParseError(f"{path}: expected a number, got {type(obj).__name__}")
    if kind is int:
        if float(obj) != int(obj):
            raise ParseError(f"{path}: expected an integer, got {obj}")
        return int(obj)
    if not math.isfinite(obj):
        raise ParseError(f"{path}: must be finite")
    return float(obj)


def _complex(obj, path):
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return complex(_number(obj[0], path), _number(obj[1], path))
    if isinstance(obj, str):
        try:
            return complex(obj.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ParseError(f"{path}: expected a pole as a number, [re, im] or 'a+bj', got {obj!r}")


def _section(doc, key, required=True):
    if key not in doc:
        if required:
            raise ParseError(f"missing top-level key '{key}'")
        return {}
    value = doc[key]
    if key != "law" and not isinstance(value, dict):
        raise ParseError(f"{key}: expected an object")
    return value


def _parse_plant(sec):
    discrete = "A" in sec
    continuous = "continuous" in sec
    if discrete == continuous:
        raise ParseError("plant: give exactly one of the discrete matrices (A, b_u, b_d) or 'continuous' + 'sample_period'")
    C_m = _matrix(sec.get("C_m", [[1.0, 0.0], [0.0, 1.0]]), "plant.C_m", (None, 2))
    if "c_o" not in sec:
        raise ParseError("plant.c_o: missing")
    c_o = _matrix(sec["c_o"], "plant.c_o", (1, 2))
    if discrete:
        for key in ("b_u", "b_d"):
            if key not in sec:
                raise ParseError(f"plant.{key}: missing")
        A = _matrix(sec["A"], "plant.A", (2, 2))
        b_u = _matrix(sec["b_u"], "plant.b_u", (2, 1))
        b_d = _matrix(sec["b_d"], "plant.b_d", (2, 1))
        period = None
    else:
        cont = sec["continuous"]
        if not isinstance(cont, dict):
            raise ParseError("plant.continuous: expected an object")
        for key in ("A", "b_u", "b_d"):
            if key not in cont:
                raise ParseError(f"plant.continuous.{key}: missing")
        if "sample_period" not in sec:
            raise ParseError("plant.sample_period: required with a continuous plant")
        period = _number(sec["sample_period"], "plant.sample_period")
        if period <= 0:
            raise ParseError("plant.sample_period: must be positive")
        method = sec.get("discretization", "euler")
        if method not in ("euler", "zoh"):
            raise ParseError(f"plant.discretization: expected 'euler' or 'zoh', got {method!r}")
        A, b_u, b_d = discretize_plant(
            _matrix(cont["A"], "plant.continuous.A", (2, 2)),
            _matrix(cont["b_u"], "plant.continuous.b_u", (2, 1)),
            _matrix(cont["b_d"], "plant.continuous.b_d", (2, 1)),
            period,
            method,
        )
    if C_m.shape[0] not in (1, 2):
        raise ParseError(f"plant.C_m: expected 1 or 2 rows, got {C_m.shape[0]}")
    return PlantSpec(A, b_u, b_d, C_m, c_o), period


def _parse_disturbance(sec, period):
    kind = sec.get("kind", "zero")
    onset = sec.get("onset", 0)
    if "onset_time" in sec:
        onset = int(round(_number(sec["onset_time"], "disturbance.onset_time") / period))
    onset = _number(onset, "disturbance.onset", int)
    try:
        if kind == "zero":
            return DisturbanceSignal.zero()
        if kind == "step":
            return DisturbanceSignal.step(_number(sec.get("magnitude"), "disturbance.magnitude"), onset)
        if kind == "constant":
            return DisturbanceSignal.constant(_number(sec.get("magnitude"), "disturbance.magnitude"))
        if kind == "ramp_to":
            return DisturbanceSignal.ramp_to(
                _number(sec.get("level"), "disturbance.level"), _number(sec.get("slope"), "disturbance.slope"), onset
            )
        if kind == "sinusoid":
            return DisturbanceSignal.sinusoid(
                _number(sec.get("amplitude"), "disturbance.amplitude"),
                _number(sec.get("period"), "disturbance.period"),
                onset,
            )
        if kind == "explicit":
            values = sec.get("values")
            if not isinstance(values, list):
                raise ParseError("disturbance.values: expected a list of numbers")
            return DisturbanceSignal.explicit([_number(v, f"disturbance.values[{i}]") for i, v in enumerate(values)])
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"disturbance: {exc}") from None
    raise ParseError(f"disturbance.kind: unknown kind {kind!r}")


def parse_config(text):
    """Parse config text into a validated :class:`RunConfig`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object")
    unknown = sorted(set(doc) - set(TOP_LEVEL))
    if unknown:
        raise ParseError(f"unknown top-level key(s): {', '.join(unknown)}")

    plant_sec = _section(doc, "plant")
    law = _section(doc, "law")
    if law not in LAWS:
        raise ParseError(f"law: expected one of {', '.join(LAWS)}, got {law!r}")
    gains_sec = _section(doc, "gains")
    observer_sec = _section(doc, "observer", required=False)
    dist_sec = _section(doc, "disturbance", required=False)
    sim_sec = _section(doc, "sim")

    plant, plant_period = _parse_plant(plant_sec)
    period = plant_period or _number(sim_sec.get("sample_period", 1.0), "sim.sample_period")
    if "sample_period" in sim_sec and plant_period is not None and _number(sim_sec["sample_period"], "sim.sample_period") != plant_period:
        raise ParseError("sim.sample_period: disagrees with plant.sample_period")
    if "horizon" not in sim_sec:
        raise ParseError("sim.horizon: missing")
    horizon = _number(sim_sec["horizon"], "sim.horizon", int)
    if horizon <= 0:
        raise ParseError("sim.horizon: must be a positive step count")
    x0 = _matrix(sim_sec.get("x0", [0.0, 0.0]), "sim.x0", (2, 1))
    disturbance = _parse_disturbance(dist_sec, period)

    problems = []
    report = validate_plant(plant)
    problems.extend(report.failures())

    has_K = "K" in gains_sec
    has_poles = "poles" in gains_sec
    if has_K == has_poles:
        raise ParseError("gains: give exactly one of 'K' or 'poles'")
    K = None
    if has_K:
        K = _matrix(gains_sec["K"], "gains.K", (1, 2))
    else:
        poles = gains_sec["poles"]
        if not isinstance(poles, list) or len(poles) != 2:
            raise ParseError("gains.poles: expected two poles")
        poles = [_complex(p, f"gains.poles[{i}]") for i, p in enumerate(poles)]
        if any(abs(p) >= 1.0 for p in poles):
            problems.append(f"requested closed-loop poles {poles} are not inside the unit circle")
        elif report.controllable:
            try:
                K = place_poles(plant.A, plant.b_u, *poles)
            except (UnstableRequest, ValueError) as exc:
                problems.append(f"gains.poles: {exc}")

    L_bar = None
    observer_init = None
    if law in ("eso_state_feedback", "eso_output_feedback"):
        has_L = "L_bar" in observer_sec
        has_obs_poles = "poles" in observer_sec
        if has_L and has_obs_poles:
            raise ParseError("observer: give at most one of 'L_bar' or 'poles'")
        if has_L:
            L_bar = _matrix(observer_sec["L_bar"], "observer.L_bar", (3, plant.r))
        elif report.ok:
            poles = observer_sec.get("poles")
            if poles is not None:
                if not isinstance(poles, list) or len(poles) != 3:
                    raise ParseError("observer.poles: expected three poles")
                poles = [_complex(p, f"observer.poles[{i}]") for i, p in enumerate(poles)]
            try:
                es = extend(plant)
                L_bar = design_observer_gain(es, poles) if poles is not None else design_observer_gain(es)
            except (MdrcError, ValueError) as exc:
                problems.append(f"observer: {exc}")
        if "x0" in observer_sec:
            observer_init = EsoState.from_vector(_matrix(observer_sec["x0"], "observer.x0", (3, 1)))

    if K is not None and not problems:
        try:
            synthesize(plant, K, L_bar)
        except ObserverUnstable as exc:
            problems.append(f"observer: {exc}")
        except (MdrcError, ValueError) as exc:
            problems.append(f"gains: {exc}")
    if problems:
        raise ValidationError(problems)

    return RunConfig(
        plant=plant,
        law=law,
        K=K,
        L_bar=L_bar,
        disturbance=disturbance,
        x0=x0,
        horizon=horizon,
        sample_period=period,
        observer_init=observer_init,
        output=sim_sec.get("output"),
    )


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
