"""Landau-Zener two-level engine Hamiltonian and its counter-adiabatic correction.

The bare Hamiltonian is bx*sx + bz(t)*sz with a static transverse field bx and
a ramped longitudinal field bz(t), both in Hz. Adding the counter-adiabatic
(CD) term b_cd(t)*sy makes the evolution follow the instantaneous eigenstates
of the bare Hamiltonian exactly, at any driving speed.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import pauli_operator
from .schedule import RampSchedule


class Mode(enum.Enum):
    """Driving mode for the expansion/compression strokes."""

    IDEAL_ADIABATIC = "IdealAdiabatic"
    NA = "NA"
    STA = "STA"


@dataclass(frozen=True)
class LZModel:
    """Transverse field bx (Hz, > 0) plus a longitudinal ramp bz."""

    bx: float
    bz: RampSchedule

    def __post_init__(self):
        # bx = 0 closes the gap and makes the CD coefficient singular at bz = 0
        if not (np.isfinite(self.bx) and self.bx > 0):
            raise ValueError(f"bx must be positive, got {self.bx}")

    @classmethod
    def expansion(cls, bx: float, nu_z_max: float, tau: float) -> "LZModel":
        """Ramp bz from 0 up to nu_z_max over tau."""
        return cls(bx=bx, bz=RampSchedule.from_endpoints(0.0, nu_z_max, tau))

    @classmethod
    def compression(cls, bx: float, nu_z_max: float, tau: float) -> "LZModel":
        """Ramp bz from nu_z_max back down to 0 over tau (time mirror of expansion)."""
        return cls(bx=bx, bz=RampSchedule.from_endpoints(nu_z_max, 0.0, tau))

    @property
    def tau(self) -> float:
        return self.bz.tau

    def h0(self, t: float) -> np.ndarray:
        """Bare Hamiltonian at time t, Pauli coefficients (0, bx, 0, bz(t))."""
        return pauli_operator(0.0, self.bx, 0.0, float(self.bz.value(t)))

    def b_cd(self, t):
        """Counter-adiabatic sy coefficient in Hz (scalar or array t).

        The field direction in the x-z plane turns at angular rate
        theta_dot = -bx*bz_dot/(bx^2 + bz^2); dividing by 2*pi expresses that
        rotation rate in the same stored-Hz convention as bx and bz. This is
        the unique scaling under which the driven state tracks the
        instantaneous eigenstates exactly (see the tracking tests).
        """
        bz = self.bz.value(t)
        bz_dot = self.bz.derivative(t)
        return -self.bx * bz_dot / (2.0 * np.pi * (self.bx**2 + bz**2))

    def h_eff(self, t: float, mode: Mode) -> np.ndarray:
        """Effective driving Hamiltonian: bare (NA) or bare + CD term (STA)."""
        if mode == Mode.NA:
            return self.h0(t)
        if mode == Mode.STA:
            return pauli_operator(0.0, self.bx, float(self.b_cd(t)),
                                  float(self.bz.value(t)))
        raise ValueError(f"h_eff is defined for NA/STA driving, got {mode}")

    def gap(self, t):
        """Instantaneous level-splitting frequency sqrt(bx^2 + bz(t)^2) in Hz."""
        bz = self.bz.value(t)
        return np.sqrt(self.bx**2 + bz**2)
