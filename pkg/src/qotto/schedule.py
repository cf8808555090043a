"""Cubic polynomial driving ramp with flat start and end.

The ramp value is C + D*(t/tau)^2*(1/2 - t/(3*tau)); its derivative vanishes
at both endpoints, which is what lets a counter-adiabatic correction switch
on and off smoothly.
"""

from dataclasses import dataclass

import numpy as np

# integrator endpoints may land a few ulp outside [0, tau]
_CLAMP_SLACK = 1e-15


def solve_amplitude(initial: float, final: float) -> float:
    """Amplitude constant D such that the ramp runs from `initial` to `final`."""
    return 6.0 * (final - initial)


@dataclass(frozen=True)
class RampSchedule:
    """Cubic ramp parameters: initial value C (Hz), amplitude D (Hz), tau (s)."""

    initial: float
    amplitude: float
    tau: float

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive and finite, got {self.tau}")
        if not (np.isfinite(self.initial) and np.isfinite(self.amplitude)):
            raise ValueError("ramp constants must be finite")

    @classmethod
    def from_endpoints(cls, initial: float, final: float, tau: float) -> "RampSchedule":
        return cls(initial=initial, amplitude=solve_amplitude(initial, final), tau=tau)

    @property
    def final(self) -> float:
        """Value reached at t = tau."""
        return self.initial + self.amplitude / 6.0

    def _clamped(self, t):
        t = np.asarray(t, dtype=float)
        slack = _CLAMP_SLACK * self.tau
        if np.any(t < -slack) or np.any(t > self.tau + slack):
            raise ValueError(f"t outside [0, {self.tau}]")
        return np.clip(t, 0.0, self.tau)

    def value(self, t):
        """Ramp value in Hz at time t (scalar or array), 0 <= t <= tau."""
        t = self._clamped(t)
        u = t / self.tau
        out = self.initial + self.amplitude * u * u * (0.5 - u / 3.0)
        return out if out.ndim else float(out)

    def derivative(self, t):
        """Time derivative in Hz/s at time t; exactly zero at both endpoints."""
        t = self._clamped(t)
        out = self.amplitude * t * (self.tau - t) / self.tau**3
        return out if out.ndim else float(out)
