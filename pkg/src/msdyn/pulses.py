"""Closed-form time profiles for couplings and detunings.

All times are measured in units of the common Gaussian width ``T`` and all
frequencies in ``1/T``. Profiles are evaluated with numpy broadcasting, so
``t`` may be a scalar or an array.

A Gaussian profile may carry a flat top: it rises on a Gaussian edge of
width ``width`` that peaks at ``center``, stays at ``amplitude`` up to
``fall_center`` and decays on a Gaussian edge of width ``fall_width``.  With
the defaults (``fall_center = center``, ``fall_width = width``) it is the plain
``amplitude * exp(-(t - center)**2 / width**2)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError, PreconditionError

KINDS = ("gaussian", "constant", "linear")


@dataclass(frozen=True)
class PulseProfile:
    kind: str
    amplitude: float = 0.0
    center: float = 0.0
    width: float = 1.0
    slope: float = 0.0
    offset: float = 0.0
    fall_center: float | None = None
    fall_width: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown pulse kind {self.kind!r}; expected one of {KINDS}")
        for name in ("amplitude", "center", "width", "slope", "offset"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"pulse field {name} must be finite")
        if self.kind == "gaussian":
            if self.width <= 0:
                raise ConfigError("gaussian width must be positive")
            if self.fall_width is not None and not self.fall_width > 0:
                raise ConfigError("gaussian fall_width must be positive")
            if self.fall_center is not None and not self.fall_center >= self.center:
                raise ConfigError("gaussian fall_center must not precede center")

    @property
    def trailing_center(self) -> float:
        return self.center if self.fall_center is None else self.fall_center

    @property
    def trailing_width(self) -> float:
        return self.width if self.fall_width is None else self.fall_width

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, data: dict) -> "PulseProfile":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown pulse fields: {sorted(unknown)}")
        if "kind" not in data:
            raise ConfigError("pulse record needs a 'kind'")
        return cls(**data)


def gaussian(amplitude, center, width=1.0, fall_center=None, fall_width=None) -> PulseProfile:
    return PulseProfile("gaussian", amplitude=amplitude, center=center, width=width,
                        fall_center=fall_center, fall_width=fall_width)


def constant(value) -> PulseProfile:
    return PulseProfile("constant", amplitude=value)


def linear(slope, center, offset=0.0) -> PulseProfile:
    return PulseProfile("linear", slope=slope, center=center, offset=offset)


def _as_time(t):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("time argument must be finite")
    return arr


def _gaussian_pieces(p: PulseProfile, t):
    # Signed distance from the flat top, and the edge width that applies.
    rise = t < p.center
    fall = t > p.trailing_center
    x = np.where(rise, t - p.center, np.where(fall, t - p.trailing_center, 0.0))
    w = np.where(fall, p.trailing_width, p.width)
    return x, w


def evaluate(profile: PulseProfile, t):
    """Value of ``profile`` at time(s) ``t``."""
    t = _as_time(t)
    if profile.kind == "constant":
        out = np.full_like(t, profile.amplitude)
    elif profile.kind == "linear":
        out = profile.offset + profile.slope * (t - profile.center)
    else:
        x, w = _gaussian_pieces(profile, t)
        out = profile.amplitude * np.exp(-(x / w) ** 2)
    return out if out.ndim else float(out)


def derivative(profile: PulseProfile, t):
    """Analytic time derivative of ``profile`` at time(s) ``t``."""
    t = _as_time(t)
    if profile.kind == "constant":
        out = np.zeros_like(t)
    elif profile.kind == "linear":
        out = np.full_like(t, profile.slope)
    else:
        x, w = _gaussian_pieces(profile, t)
        out = -2.0 * x / w**2 * profile.amplitude * np.exp(-(x / w) ** 2)
    return out if out.ndim else float(out)


def peak_magnitude(profile: PulseProfile) -> float:
    """Largest |value| the profile attains; linear ramps report |offset| (unbounded otherwise)."""
    if profile.kind == "linear":
        return abs(profile.offset) if profile.slope == 0 else math.inf
    return abs(profile.amplitude)


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    n_steps: int

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ConfigError("grid bounds must be finite")
        if not self.t_end > self.t_start:
            raise ConfigError("grid needs t_end > t_start")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ConfigError("grid n_steps must be a positive integer")

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps

    def times(self) -> np.ndarray:
        return self.t_start + self.step * np.arange(self.n_steps + 1)

    def half_step_times(self) -> np.ndarray:
        """Nodes ``t_start + k*h/2`` for k = 0..2N, as needed by a fourth-order stage scheme."""
        return self.t_start + 0.5 * self.step * np.arange(2 * self.n_steps + 1)

    def with_steps(self, n_steps: int) -> "TimeGrid":
        return TimeGrid(self.t_start, self.t_end, int(n_steps))
