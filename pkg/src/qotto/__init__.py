"""Desk-scale simulator for a spin-1/2 Landau-Zener quantum Otto heat engine
driven ideally, non-adiabatically, or by a counter-adiabatic shortcut."""

from .engine import (ConfigurationError, CostFunctional, CycleMetrics,
                     EngineConfig, adiabatic_map, efficiencies_and_power,
                     run_cycle, sta_cost, swap_thermalize)
from .linalg import (eigh, expm_unitary, fidelity, partial_trace,
                     pauli_coefficients, pauli_operator, swap_gate, tensor)
from .model import LZModel, Mode
from .propagator import (ConvergenceError, DEFAULT_STEPS, EvolutionSpec,
                         converged_steps, evolve, total_unitary)
from .schedule import RampSchedule, solve_amplitude
from .sweep import SweepSpec, default_tau_grid, run_sweep, write_sweep
from .thermo import (PLANCK_PEV_PER_HZ, BathSpec, Role, Stroke,
                     StrokeLedgerEntry, gibbs, heat, mean_energy,
                     spin_temperature, work, working_condition)

__version__ = "0.1.0"

__all__ = [
    "BathSpec", "ConfigurationError", "ConvergenceError", "CostFunctional",
    "CycleMetrics", "DEFAULT_STEPS", "EngineConfig", "EvolutionSpec",
    "LZModel", "Mode", "PLANCK_PEV_PER_HZ", "RampSchedule", "Role",
    "Stroke", "StrokeLedgerEntry", "SweepSpec", "adiabatic_map",
    "converged_steps", "default_tau_grid", "efficiencies_and_power", "eigh",
    "evolve", "expm_unitary", "fidelity", "gibbs", "heat", "mean_energy",
    "partial_trace", "pauli_coefficients", "pauli_operator", "run_cycle",
    "run_sweep", "spin_temperature", "sta_cost", "swap_gate",
    "swap_thermalize", "tensor", "total_unitary", "work",
    "working_condition", "write_sweep", "solve_amplitude",
]
