import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qotto import linalg, thermo
from qotto.thermo import (PLANCK_PEV_PER_HZ, BathSpec, Role, Stroke,
                          StrokeLedgerEntry, gibbs, heat, mean_energy,
                          spin_temperature, work, working_condition)

H = PLANCK_PEV_PER_HZ


def two_level(nu):
    """Hamiltonian whose level splitting is h*nu."""
    return linalg.pauli_operator(0.0, 0.0, 0.0, nu)


def test_bath_spec_rejects_nonpositive_temperature():
    with pytest.raises(ValueError):
        BathSpec(0.0, Role.COLD)
    with pytest.raises(ValueError):
        BathSpec(-1.9, Role.HOT)


def test_gibbs_infinite_temperature_limit():
    rho = gibbs(two_level(1000.0), BathSpec(1e9, Role.HOT))
    assert np.max(np.abs(rho - np.eye(2) / 2)) <= 1e-9


def test_gibbs_boltzmann_ratio_ln3():
    # gap chosen so h*nu/kT = ln 3, forcing populations 0.75/0.25
    kt = 1.0
    nu = kt * math.log(3.0) / H
    rho = gibbs(two_level(nu), BathSpec(kt, Role.COLD))
    p = np.sort(np.diag(rho).real)
    assert p[0] == pytest.approx(0.25, abs=1e-12)
    assert p[1] == pytest.approx(0.75, abs=1e-12)


def test_gibbs_engine_cold_populations():
    rho = gibbs(linalg.pauli_operator(0, 1000.0, 0, 0), BathSpec(1.9, Role.COLD))
    p_ground = 1.0 / (1.0 + math.exp(-H * 1000.0 / 1.9))
    assert p_ground == pytest.approx(0.8981, abs=5e-4)
    w, v = linalg.eigh(linalg.pauli_operator(0, 1000.0, 0, 0))
    populations = np.diag(v.conj().T @ rho @ v).real
    assert populations[0] == pytest.approx(p_ground, abs=1e-12)


def test_gibbs_commutes_with_hamiltonian():
    h = linalg.pauli_operator(0, 700.0, 0, -300.0)
    rho = gibbs(h, BathSpec(3.0, Role.COLD))
    assert np.max(np.abs(h @ rho - rho @ h)) <= 1e-12 * np.max(np.abs(h))


def test_gibbs_is_valid_density_matrix():
    rho = gibbs(linalg.pauli_operator(0, 1000.0, 0, 2500.0), BathSpec(6.45, Role.HOT))
    linalg.require_density_matrix(rho)


def test_spin_temperature_ln3_inverse():
    kt = spin_temperature(0.75, 0.25, math.log(3.0) / H)
    assert kt == pytest.approx(1.0, rel=1e-12)


def test_spin_temperature_diverges_at_equal_populations():
    kt = spin_temperature(0.5 + 1e-12, 0.5 - 1e-12, 1000.0)
    assert kt > 1e8


def test_spin_temperature_rejects_inverted_or_invalid():
    with pytest.raises(ValueError):
        spin_temperature(0.25, 0.75, 1000.0)
    with pytest.raises(ValueError):
        spin_temperature(0.7, 0.2, 1000.0)  # populations do not sum to 1
    with pytest.raises(ValueError):
        spin_temperature(1.0, 0.0, 1000.0)


@given(st.floats(min_value=0.2, max_value=60.0),
       st.floats(min_value=100.0, max_value=5e3))
@settings(max_examples=200)
def test_gibbs_spin_temperature_roundtrip(kt, nu):
    rho = gibbs(two_level(nu), BathSpec(kt, Role.COLD))
    p = np.sort(np.diag(rho).real)[::-1]
    kt_back = spin_temperature(p[0], p[1], nu)
    rho_back = gibbs(two_level(nu), BathSpec(kt_back, Role.COLD))
    assert np.max(np.abs(rho_back - rho)) <= 1e-9


def test_mean_energy_of_gibbs_state():
    nu = 1000.0
    kt = 1.9
    rho = gibbs(two_level(nu), BathSpec(kt, Role.COLD))
    # closed form: -(h nu / 2) * tanh(h nu / (2 kT))
    expected = -(H * nu / 2) * math.tanh(H * nu / (2 * kt))
    assert mean_energy(two_level(nu), rho) == pytest.approx(expected, rel=1e-12)


def test_work_zero_for_identical_endpoints():
    h = two_level(1000.0)
    rho = gibbs(h, BathSpec(1.9, Role.COLD))
    assert work(h, rho, h, rho) == 0.0


def test_work_antisymmetric_under_endpoint_exchange():
    h1, h2 = two_level(1000.0), two_level(2692.58)
    r1 = gibbs(h1, BathSpec(1.9, Role.COLD))
    r2 = gibbs(h2, BathSpec(6.45, Role.HOT))
    assert work(h1, r1, h2, r2) == pytest.approx(-work(h2, r2, h1, r1), rel=1e-12)


def test_heat_zero_for_unchanged_state():
    h = two_level(1000.0)
    rho = gibbs(h, BathSpec(1.9, Role.COLD))
    assert heat(h, rho, rho) == 0.0


def test_heating_stroke_absorbs_heat():
    h = linalg.pauli_operator(0, 1000.0, 0, 2500.0)
    cold_derived = gibbs(h, BathSpec(1.9, Role.COLD))
    hot = gibbs(h, BathSpec(6.45, Role.HOT))
    assert heat(h, cold_derived, hot) > 0


def test_ideal_expansion_work_closed_form():
    """Two-level quasi-static stroke: populations frozen while the gap opens."""
    nu_i, nu_f = 1000.0, math.hypot(1000.0, 2500.0)
    kt_c = 1.9
    delta = math.tanh(H * nu_i / (2 * kt_c))  # p0 - p1 of the cold state
    expected = -(H / 2) * (nu_f - nu_i) * delta
    h_i = linalg.pauli_operator(0, 1000.0, 0, 0)
    h_f = linalg.pauli_operator(0, 1000.0, 0, 2500.0)
    rho_i = gibbs(h_i, BathSpec(kt_c, Role.COLD))
    _, v_i = linalg.eigh(h_i)
    _, v_f = linalg.eigh(h_f)
    p = np.diag(v_i.conj().T @ rho_i @ v_i).real
    rho_f = (v_f * p) @ v_f.conj().T
    w = work(h_i, rho_i, h_f, rho_f)
    assert w == pytest.approx(expected, rel=1e-12)
    assert w == pytest.approx(-2.787, abs=1e-3)


def test_working_condition_engine_defaults():
    nu_f = math.hypot(1000.0, 2500.0)
    hot1 = BathSpec(6.45, Role.HOT)
    hot2 = BathSpec(8.45, Role.HOT)
    cold = BathSpec(1.9, Role.COLD)
    assert working_condition(hot1, cold, 1000.0, nu_f)
    assert working_condition(hot2, cold, 1000.0, nu_f)


def test_working_condition_fails_at_equal_temperatures():
    bath = BathSpec(1.9, Role.COLD)
    assert not working_condition(BathSpec(1.9, Role.HOT), bath, 1000.0, 2692.58)


def test_ledger_entry_stroke_constraints():
    StrokeLedgerEntry("work", -1.0, Stroke.EXPANSION)
    StrokeLedgerEntry("heat", 0.5, Stroke.HEATING)
    with pytest.raises(ValueError):
        StrokeLedgerEntry("work", 1.0, Stroke.HEATING)
    with pytest.raises(ValueError):
        StrokeLedgerEntry("heat", 1.0, Stroke.COMPRESSION)
    with pytest.raises(ValueError):
        StrokeLedgerEntry("energy", 1.0, Stroke.EXPANSION)


def test_temperature_presets():
    cold_f, hots_f = thermo.TEMPERATURE_PRESETS["frequency"]
    cold_a, hots_a = thermo.TEMPERATURE_PRESETS["angular"]
    assert (cold_f, hots_f) == (1.9, (6.45, 8.45))
    assert (cold_a, hots_a) == (11.94, (40.54, 53.11))
    # the two presets describe the same engine up to a ~2*pi bookkeeping factor
    assert cold_a / cold_f == pytest.approx(2 * math.pi, rel=0.01)
