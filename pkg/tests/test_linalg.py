import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qotto import linalg

finite = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)


def random_density(rng, dim=2):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_pauli_operator_zero():
    assert np.array_equal(linalg.pauli_operator(0, 0, 0, 0), np.zeros((2, 2)))


def test_pauli_operator_sigma_x_eigenvalues():
    w = np.linalg.eigvalsh(linalg.pauli_operator(0, 1000, 0, 0))
    assert np.allclose(w, [-1000, 1000])


def test_pauli_operator_engine_endpoint_eigenvalues():
    w = np.linalg.eigvalsh(linalg.pauli_operator(0, 1000, 0, 2500))
    expected = math.hypot(1000, 2500)
    assert np.allclose(w, [-expected, expected])
    assert abs(expected - 2692.58) < 0.01


def test_pauli_operator_rejects_non_finite():
    with pytest.raises(ValueError):
        linalg.pauli_operator(0, math.nan, 0, 0)
    with pytest.raises(ValueError):
        linalg.pauli_operator(math.inf, 0, 0, 0)


@given(finite, finite, finite, finite)
def test_pauli_roundtrip(a0, ax, ay, az):
    back = linalg.pauli_coefficients(linalg.pauli_operator(a0, ax, ay, az))
    scale = 1.0 + max(abs(a0), abs(ax), abs(ay), abs(az))
    assert np.max(np.abs(np.array(back) - (a0, ax, ay, az))) <= 1e-12 * scale


@given(finite, finite, finite, finite)
def test_pauli_operator_is_hermitian(a0, ax, ay, az):
    linalg.require_hermitian(linalg.pauli_operator(a0, ax, ay, az))


def test_expm_unitary_zero_time_is_identity():
    h = linalg.pauli_operator(12.0, 345.0, -6.0, 789.0)
    assert np.allclose(linalg.expm_unitary(h, 0.0), np.eye(2), atol=1e-15)


def test_expm_unitary_full_rotation_is_identity_up_to_phase():
    # phase theta = pi*dt*1000 per branch; dt = 2e-3 gives theta = 2*pi
    h = linalg.pauli_operator(0, 0, 0, 1000.0)
    u = linalg.expm_unitary(h, 2e-3)
    phase = u[0, 0] / abs(u[0, 0])
    assert np.allclose(u, phase * np.eye(2), atol=1e-12)


def test_expm_unitary_matches_taylor_series():
    h = linalg.pauli_operator(0, 1000.0, 0, 2500.0)
    dt = 1e-5
    a = -1j * np.pi * dt * h
    term = np.eye(2, dtype=complex)
    series = np.eye(2, dtype=complex)
    for k in range(1, 13):
        term = term @ a / k
        series = series + term
    assert np.max(np.abs(linalg.expm_unitary(h, dt) - series)) <= 1e-12


def test_expm_unitary_rejects_negative_dt():
    with pytest.raises(ValueError):
        linalg.expm_unitary(linalg.pauli_operator(0, 1, 0, 0), -1e-3)


def test_expm_unitary_rejects_non_hermitian():
    with pytest.raises(ValueError):
        linalg.expm_unitary(np.array([[0, 1], [0, 0]], dtype=complex), 1e-3)


def test_eigh_sigma_z():
    w, v = linalg.eigh(linalg.SIGMA_Z)
    assert np.allclose(w, [-1, 1])
    assert np.allclose(np.abs(v[:, 0]), [0, 1])
    assert np.allclose(np.abs(v[:, 1]), [1, 0])


def test_eigh_sigma_x_gauge():
    w, v = linalg.eigh(linalg.SIGMA_X)
    assert np.allclose(w, [-1, 1])
    # gauge: first significant component real positive
    for i in range(2):
        assert v[0, i].real > 0
        assert abs(v[0, i].imag) < 1e-14
    assert np.allclose(np.abs(v), np.full((2, 2), 1 / math.sqrt(2)))


def test_eigh_engine_endpoint_values():
    h = linalg.pauli_operator(0, 1000, 0, 2500)
    w, v = linalg.eigh(h)
    assert np.allclose(w, [-math.hypot(1000, 2500), math.hypot(1000, 2500)])
    for i in range(2):
        assert np.allclose(h @ v[:, i], w[i] * v[:, i], atol=1e-10 * np.max(np.abs(h)))


def test_fidelity_identity():
    rng = np.random.default_rng(7)
    rho = random_density(rng)
    assert linalg.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_orthogonal_pure_states():
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    assert linalg.fidelity(p0, p1) == 0.0


def test_fidelity_pure_vs_maximally_mixed():
    p0 = np.diag([1.0, 0.0]).astype(complex)
    assert linalg.fidelity(p0, np.eye(2, dtype=complex) / 2) == pytest.approx(
        1 / math.sqrt(2), abs=1e-12)


def test_fidelity_rejects_zero_norm():
    with pytest.raises(ValueError):
        linalg.fidelity(np.zeros((2, 2), dtype=complex), np.eye(2, dtype=complex) / 2)


def test_fidelity_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        linalg.fidelity(np.eye(2, dtype=complex) / 2, np.eye(4, dtype=complex) / 4)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50)
def test_fidelity_symmetric_and_bounded(seed):
    rng = np.random.default_rng(seed)
    a, b = random_density(rng), random_density(rng)
    f = linalg.fidelity(a, b)
    assert 0.0 <= f <= 1.0
    assert f == pytest.approx(linalg.fidelity(b, a), abs=1e-12)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50)
def test_fidelity_one_iff_proportional_pure_states(seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=2) + 1j * rng.normal(size=2)
    psi /= np.linalg.norm(psi)
    phi = rng.normal(size=2) + 1j * rng.normal(size=2)
    phi /= np.linalg.norm(phi)
    pa = np.outer(psi, psi.conj())
    pb = np.outer(phi, phi.conj())
    f = linalg.fidelity(pa, pb)
    overlap = abs(np.vdot(psi, phi)) ** 2
    assert f == pytest.approx(overlap, abs=1e-12)
    if f > 1 - 1e-12:
        assert overlap > 1 - 1e-11  # proportional projectors


def test_tensor_maximally_mixed():
    half = np.eye(2, dtype=complex) / 2
    assert np.allclose(linalg.tensor(half, half), np.eye(4) / 4)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50)
def test_partial_trace_projects_onto_kept_factor(seed):
    rng = np.random.default_rng(seed)
    a, b = random_density(rng), random_density(rng)
    joint = linalg.tensor(a, b)
    # oracle: direct index summation
    direct_1 = np.array([[joint[0, 0] + joint[1, 1], joint[0, 2] + joint[1, 3]],
                         [joint[2, 0] + joint[3, 1], joint[2, 2] + joint[3, 3]]])
    assert np.max(np.abs(linalg.partial_trace(joint, 1) - direct_1)) <= 1e-12
    assert np.max(np.abs(linalg.partial_trace(joint, 1) - a)) <= 1e-12
    assert np.max(np.abs(linalg.partial_trace(joint, 2) - b)) <= 1e-12


def test_partial_trace_rejects_bad_inputs():
    with pytest.raises(ValueError):
        linalg.partial_trace(np.eye(2, dtype=complex), 1)
    with pytest.raises(ValueError):
        linalg.partial_trace(np.eye(4, dtype=complex) / 4, 3)


def test_swap_gate_exchanges_factors():
    rng = np.random.default_rng(11)
    a, b = random_density(rng), random_density(rng)
    s = linalg.swap_gate()
    swapped = s @ linalg.tensor(a, b) @ s.conj().T
    assert np.max(np.abs(swapped - linalg.tensor(b, a))) <= 1e-14
    linalg.require_unitary(s)


def test_require_density_matrix_accepts_valid_and_rejects_invalid():
    linalg.require_density_matrix(np.eye(2, dtype=complex) / 2)
    with pytest.raises(ValueError):
        linalg.require_density_matrix(np.eye(2, dtype=complex))  # trace 2
    with pytest.raises(ValueError):
        linalg.require_density_matrix(np.diag([1.5, -0.5]).astype(complex))
