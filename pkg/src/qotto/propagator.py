"""Time-ordered unitary evolution under the time-dependent engine Hamiltonian.

Uses exponential-midpoint stepping: the interval [0, tau] is split into
n_steps slices and each slice contributes the closed-form exponential of the
Hamiltonian evaluated at the slice midpoint. Second-order accurate; the
ordered product is evaluated by pairwise tree reduction, which is fast and
bitwise reproducible for a fixed spec.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z
from .model import LZModel, Mode

DEFAULT_STEPS = 4096
MAX_CONVERGENCE_STEPS = 2**20


class ConvergenceError(RuntimeError):
    """Step-count doubling hit the cap without meeting the tolerance."""


@dataclass(frozen=True)
class EvolutionSpec:
    """One driven stroke: model, driving mode, duration and step count."""

    model: LZModel
    mode: Mode
    tau: float
    n_steps: int = DEFAULT_STEPS

    def __post_init__(self):
        if self.mode not in (Mode.NA, Mode.STA):
            raise ValueError(f"evolution mode must be NA or STA, got {self.mode}")
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive, got {self.tau}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError(f"n_steps must be an integer >= 2, got {self.n_steps}")
        if abs(self.tau - self.model.tau) > 1e-15 * self.model.tau:
            raise ValueError("spec tau must match the model ramp duration")

    def with_steps(self, n_steps: int) -> "EvolutionSpec":
        return EvolutionSpec(self.model, self.mode, self.tau, n_steps)


def _step_unitaries(spec: EvolutionSpec) -> np.ndarray:
    """Stack of per-slice midpoint propagators, shape (n_steps, 2, 2)."""
    n = spec.n_steps
    dt = spec.tau / n
    t_mid = (np.arange(n) + 0.5) * dt
    ax = np.full(n, spec.model.bx)
    az = np.asarray(spec.model.bz.value(t_mid), dtype=float)
    if spec.mode == Mode.STA:
        ay = np.asarray(spec.model.b_cd(t_mid), dtype=float)
    else:
        ay = np.zeros(n)
    r = np.sqrt(ax * ax + ay * ay + az * az)
    theta = np.pi * dt * r
    safe_r = np.where(r > 0, r, 1.0)
    nx, ny, nz = ax / safe_r, ay / safe_r, az / safe_r
    c = np.cos(theta)[:, None, None]
    s = np.sin(theta)[:, None, None]
    n_sigma = (nx[:, None, None] * SIGMA_X
               + ny[:, None, None] * SIGMA_Y
               + nz[:, None, None] * SIGMA_Z)
    return c * IDENTITY_2 - 1j * s * n_sigma


def _ordered_product(us: np.ndarray) -> np.ndarray:
    """Product us[n-1] @ ... @ us[0] via pairwise reduction."""
    while us.shape[0] > 1:
        m = us.shape[0]
        if m % 2:
            head = np.matmul(us[1:m - 1:2], us[0:m - 1:2])
            us = np.concatenate([head, us[m - 1:m]])
        else:
            us = np.matmul(us[1::2], us[0::2])
    return us[0]


def total_unitary(spec: EvolutionSpec) -> np.ndarray:
    """Time-ordered propagator over the full stroke (latest step leftmost)."""
    return _ordered_product(_step_unitaries(spec))


def evolve(rho: np.ndarray, spec: EvolutionSpec) -> np.ndarray:
    """Conjugate a density matrix by the stroke propagator: U rho U+.

    The result is re-symmetrized and trace-normalized; this strips the
    first-order rounding drift of the long step product.
    """
    u = total_unitary(spec)
    out = u @ rho @ u.conj().T
    out = 0.5 * (out + out.conj().T)
    return out / np.trace(out).real


def converged_steps(spec: EvolutionSpec, tol: float) -> int:
    """Smallest step count in the doubling sequence from spec.n_steps whose
    refinement changes the propagator by less than tol (max-entry norm).

    Deterministic; raises ConvergenceError past 2**20 steps.
    """
    if not (np.isfinite(tol) and tol > 0):
        raise ValueError(f"tol must be positive and finite, got {tol}")
    n = spec.n_steps
    u_n = total_unitary(spec.with_steps(n))
    while True:
        u_2n = total_unitary(spec.with_steps(2 * n))
        if np.max(np.abs(u_2n - u_n)) < tol:
            return n
        n *= 2
        u_n = u_2n
        if n > MAX_CONVERGENCE_STEPS:
            raise ConvergenceError(
                f"no convergence to {tol} within {MAX_CONVERGENCE_STEPS} steps")
