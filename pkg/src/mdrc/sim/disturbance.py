"""Disturbance sequence generators."""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

KINDS = ("zero", "step", "constant", "ramp_to", "sinusoid", "explicit")


@dataclass(frozen=True)
class DisturbanceSignal:
    """A disturbance ``d(k)`` indexed by sample number.

    ``step`` is ``magnitude`` from ``onset`` on; ``ramp_to`` rises from 0 at
    ``onset`` with ``slope`` per sample until it reaches ``level``;
    ``sinusoid`` has its ``period`` in samples; ``explicit`` repeats its last
    value when asked past its end.
    """

    kind: str = "zero"
    magnitude: float = 0.0
    onset: int = 0
    level: float = 0.0
    slope: float = 0.0
    amplitude: float = 0.0
    period: float = 1.0
    values: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown disturbance kind {self.kind!r}; expected one of {KINDS}")
        if self.onset < 0:
            raise ValueError("onset must be non-negative")
        if self.kind == "ramp_to" and self.slope == 0.0 and self.level != 0.0:
            raise ValueError("ramp_to needs a nonzero slope")
        if self.kind == "sinusoid" and self.period <= 0:
            raise ValueError("sinusoid period must be positive")
        if self.kind == "explicit":
            vals = tuple(float(v) for v in self.values)
            if not vals:
                raise ValueError("explicit disturbance needs at least one value")
            if not all(math.isfinite(v) for v in vals):
                raise ValueError("explicit disturbance values must be finite")
            object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def step(cls, magnitude, onset):
        return cls("step", magnitude=magnitude, onset=int(onset))

    @classmethod
    def constant(cls, c):
        return cls("constant", magnitude=c)

    @classmethod
    def ramp_to(cls, level, slope, onset=0):
        return cls("ramp_to", level=level, slope=abs(slope), onset=int(onset))

    @classmethod
    def sinusoid(cls, amplitude, period, onset=0):
        return cls("sinusoid", amplitude=amplitude, period=period, onset=int(onset))

    @classmethod
    def explicit(cls, values):
        return cls("explicit", values=tuple(values))

    @property
    def bound(self):
        """Supremum of ``|d(k)|`` over all ``k``."""
        if self.kind in ("step", "constant"):
            return abs(self.magnitude)
        if self.kind == "ramp_to":
            return abs(self.level)
        if self.kind == "sinusoid":
            return abs(self.amplitude)
        if self.kind == "explicit":
            return max(abs(v) for v in self.values)
        return 0.0

    def sequence(self, n):
        """``d(0), ..., d(n-1)`` as a float array."""
        k = np.arange(n, dtype=float)
        after = k >= self.onset
        if self.kind == "zero":
            return np.zeros(n)
        if self.kind == "step":
            return np.where(after, float(self.magnitude), 0.0)
        if self.kind == "constant":
            return np.full(n, float(self.magnitude))
        if self.kind == "ramp_to":
            ramp = np.minimum(self.slope * (k - self.onset), abs(self.level))
            return np.where(after, math.copysign(1.0, self.level) * ramp, 0.0)
        if self.kind == "sinusoid":
            wave = self.amplitude * np.sin(2.0 * np.pi * (k - self.onset) / self.period)
            return np.where(after, wave, 0.0)
        vals = np.array(self.values, dtype=float)
        if n > len(vals):
            warnings.warn(
                f"explicit disturbance has {len(vals)} samples, {n} requested; repeating the last value",
                stacklevel=2,
            )
            vals = np.concatenate([vals, np.full(n - len(vals), vals[-1])])
        return vals[:n].copy()
