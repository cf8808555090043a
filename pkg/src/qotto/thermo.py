"""Gibbs states, spin temperatures and per-stroke energy bookkeeping.

Unit conventions
----------------
Hamiltonian matrices store Pauli coefficients in Hz; the physical energy
operator is (h/2) times the stored matrix, so a level-splitting frequency nu
corresponds to an energy gap of h*nu. Energies are reported in peV using
h = 4.135667696e-3 peV/Hz, and temperatures enter as k_B*T in peV.

Sign conventions: work is positive when done ON the working medium, heat is
positive when absorbed BY the medium.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import linalg

PLANCK_PEV_PER_HZ = 4.135667696e-3

# Two spin-temperature presets (cold, (hot1, hot2)) in peV. They describe the
# same engine; the angular set is 2*pi times the frequency set, reflecting an
# hbar*omega rather than h*nu temperature bookkeeping.
TEMPERATURE_PRESETS = {
    "frequency": (1.9, (6.45, 8.45)),
    "angular": (11.94, (40.54, 53.11)),
}


class Role(enum.Enum):
    HOT = "hot"
    COLD = "cold"


class Stroke(enum.Enum):
    COOLING = "cooling"
    EXPANSION = "expansion"
    HEATING = "heating"
    COMPRESSION = "compression"


@dataclass(frozen=True)
class BathSpec:
    """A reservoir characterized by k_B*T in peV."""

    kt_pev: float
    role: Role

    def __post_init__(self):
        if not (np.isfinite(self.kt_pev) and self.kt_pev > 0):
            raise ValueError(f"kT must be positive, got {self.kt_pev}")


@dataclass(frozen=True)
class StrokeLedgerEntry:
    """One energy-exchange record; work only on driven strokes, heat only on
    thermal contact strokes."""

    kind: str  # "work" | "heat"
    value_pev: float
    stroke: Stroke

    def __post_init__(self):
        if self.kind == "work":
            if self.stroke not in (Stroke.EXPANSION, Stroke.COMPRESSION):
                raise ValueError(f"work entry on {self.stroke.value} stroke")
        elif self.kind == "heat":
            if self.stroke not in (Stroke.COOLING, Stroke.HEATING):
                raise ValueError(f"heat entry on {self.stroke.value} stroke")
        else:
            raise ValueError(f"ledger kind must be 'work' or 'heat', got {self.kind}")


def gibbs(h: np.ndarray, bath: BathSpec) -> np.ndarray:
    """Thermal state of h at the bath temperature.

    Populations are exp(-E_n/kT)/Z with E_n = (h/2) * eigenvalue(h) in peV;
    the state is diagonal in the eigenbasis of h.
    """
    w, v = linalg.eigh(h)
    energies = 0.5 * PLANCK_PEV_PER_HZ * w
    weights = np.exp(-(energies - energies.min()) / bath.kt_pev)
    p = weights / weights.sum()
    rho = (v * p) @ v.conj().T
    return 0.5 * (rho + rho.conj().T)


def spin_temperature(p0: float, p1: float, nu: float) -> float:
    """k_B*T in peV from a two-level population pair across a gap of nu Hz.

    Inverts beta = ln(p0/p1) / (h*nu). Requires a thermal ordering p0 > p1.
    """
    if abs(p0 + p1 - 1.0) > 1e-9:
        raise ValueError("populations must sum to 1")
    if not (p0 > p1 > 0.0):
        raise ValueError(
            "spin temperature requires p0 > p1 > 0 (non-thermal population order)")
    return PLANCK_PEV_PER_HZ * nu / np.log(p0 / p1)


def mean_energy(h: np.ndarray, rho: np.ndarray) -> float:
    """Tr[H rho] in peV for a stored-Hz Hamiltonian matrix."""
    return 0.5 * PLANCK_PEV_PER_HZ * float(np.trace(h @ rho).real)


def work(h_i: np.ndarray, rho_i: np.ndarray, h_f: np.ndarray, rho_f: np.ndarray) -> float:
    """Energy change across a driven stroke: Tr[H_f rho_f] - Tr[H_i rho_i]."""
    return mean_energy(h_f, rho_f) - mean_energy(h_i, rho_i)


def heat(h: np.ndarray, rho_i: np.ndarray, rho_f: np.ndarray) -> float:
    """Energy change at fixed Hamiltonian: Tr[H (rho_f - rho_i)]."""
    return mean_energy(h, rho_f) - mean_energy(h, rho_i)


def working_condition(hot: BathSpec, cold: BathSpec, nu_i: float, nu_f: float) -> bool:
    """Heat-engine operating condition: T_hot/T_cold must exceed nu_f/nu_i."""
    if min(hot.kt_pev, cold.kt_pev, nu_i, nu_f) <= 0:
        raise ValueError("temperatures and gap frequencies must be positive")
    return hot.kt_pev / cold.kt_pev > nu_f / nu_i
