"""Exact complex linear algebra for one- and two-qubit states and operators.

Everything here works on plain complex numpy arrays (2x2 or 4x4). Hamiltonian
matrices carry coefficients in ordinary frequency units (Hz = energy/h);
density matrices and unitaries are dimensionless. All functions are pure.
"""

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2):
    _m.setflags(write=False)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_SLACK = 1e-10
UNITARY_TOL = 1e-10


def pauli_operator(a0: float, ax: float, ay: float, az: float) -> np.ndarray:
    """Build a0*I + ax*sx + ay*sy + az*sz. Coefficients in Hz, must be finite."""
    coeffs = (a0, ax, ay, az)
    if not all(np.isfinite(c) for c in coeffs):
        raise ValueError(f"pauli coefficients must be finite, got {coeffs}")
    return np.array([[a0 + az, ax - 1j * ay],
                     [ax + 1j * ay, a0 - az]], dtype=complex)


def pauli_coefficients(op: np.ndarray) -> tuple[float, float, float, float]:
    """Inverse of pauli_operator; exact for Hermitian 2x2 input."""
    a0 = 0.5 * (op[0, 0] + op[1, 1]).real
    az = 0.5 * (op[0, 0] - op[1, 1]).real
    ax = op[0, 1].real
    ay = -op[0, 1].imag
    return a0, ax, ay, az


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")


def require_density_matrix(rho: np.ndarray) -> None:
    """Trace 1, Hermitian, positive semidefinite up to numerical slack."""
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"density matrix must be 2x2 or 4x4, got {rho.shape}")
    require_hermitian(rho, HERMITIAN_TOL)
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise ValueError("density matrix trace differs from 1")
    if np.min(np.linalg.eigvalsh(rho)) < -PSD_SLACK:
        raise ValueError("density matrix has a significantly negative eigenvalue")


def require_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> None:
    d = u.shape[0]
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > tol:
        raise ValueError("matrix is not unitary within tolerance")


def expm_unitary(h: np.ndarray, dt: float) -> np.ndarray:
    """Closed-form step propagator exp(-i*pi*dt*h) for a Hermitian 2x2 h.

    The pi (rather than 2*pi) reflects the stored-coefficient convention:
    a Pauli coefficient of nu Hz splits the levels by h*nu, so it accumulates
    phase at pi*nu per second on each branch.
    """
    if not (np.isfinite(dt) and dt >= 0):
        raise ValueError(f"dt must be finite and >= 0, got {dt}")
    require_hermitian(h)
    a0, ax, ay, az = pauli_coefficients(h)
    r = np.sqrt(ax * ax + ay * ay + az * az)
    phase = np.exp(-1j * np.pi * dt * a0)
    if r == 0.0:
        return phase * IDENTITY_2
    theta = np.pi * dt * r
    n_sigma = (ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z) / r
    return phase * (np.cos(theta) * IDENTITY_2 - 1j * np.sin(theta) * n_sigma)


def eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and gauge-fixed orthonormal eigenvectors.

    The global phase of each eigenvector is fixed so that its first
    component of significant magnitude is real and positive; this keeps
    eigenstate tracking continuous across a parameter ramp.
    """
    require_hermitian(h)
    w, v = np.linalg.eigh(h)
    for i in range(v.shape[1]):
        col = v[:, i]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        v[:, i] = col * (abs(col[idx]) / col[idx])
    return w, v


def fidelity(rho_e: np.ndarray, rho_t: np.ndarray) -> float:
    """Normalized Hilbert-Schmidt overlap |Tr(a b+)| / sqrt(Tr(a a+) Tr(b b+)).

    This is an overlap measure (reduces to |<a|b>|^2 on pure states), not the
    Uhlmann fidelity.
    """
    if rho_e.shape != rho_t.shape:
        raise ValueError("density matrices must have equal dimension")
    na = np.trace(rho_e @ rho_e.conj().T).real
    nb = np.trace(rho_t @ rho_t.conj().T).real
    if na <= 0.0 or nb <= 0.0:
        raise ValueError("fidelity undefined for zero-norm input")
    val = abs(np.trace(rho_e @ rho_t.conj().T)) / np.sqrt(na * nb)
    return min(float(val), 1.0)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices (qubit 1 = left factor)."""
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("tensor expects two 2x2 matrices")
    return np.kron(a, b)


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Trace a 4x4 two-qubit matrix down to the kept qubit (keep in {1, 2})."""
    if rho.shape != (4, 4):
        raise ValueError(f"partial_trace expects a 4x4 matrix, got {rho.shape}")
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep}")
    r = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def swap_gate() -> np.ndarray:
    """Two-qubit SWAP: exchanges the states of qubit 1 and qubit 2."""
    return np.array([[1, 0, 0, 0],
                     [0, 0, 1, 0],
                     [0, 1, 0, 0],
                     [0, 0, 0, 1]], dtype=complex)
