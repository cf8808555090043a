"""Self-contained invariant suite: every structural and physical property the
library promises, run at fixed seeds with the measured margin reported.

Used by the `qotto validate` CLI command and by the test suite.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .engine import (EngineConfig, run_cycle, sta_cost,
                     CostFunctional, FLAG_NOT_OPERATING)
from .model import LZModel, Mode
from .propagator import EvolutionSpec, total_unitary, evolve
from .schedule import RampSchedule
from .sweep import SweepSpec, run_sweep
from .thermo import BathSpec, Role, Stroke, gibbs, spin_temperature

SEED = 20260809


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, measured: float, bound: float, sense: str = "<=") -> CheckResult:
    ok = measured <= bound if sense == "<=" else measured >= bound
    return CheckResult(name, ok, f"measured {measured:.3e} (bound {sense} {bound:.3e})")


def _random_density(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def check_pauli_roundtrip(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10_000):
        c = rng.uniform(-1e4, 1e4, size=4)
        op = linalg.pauli_operator(*c)
        back = linalg.pauli_coefficients(op)
        err = float(np.max(np.abs(np.array(back) - c))) / (1.0 + np.max(np.abs(c)))
        worst = max(worst, err)
    return _result("pauli-roundtrip", worst, 1e-12)


def check_expm_unitarity(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10_000):
        c = rng.uniform(-1e4, 1e4, size=4)
        dt = rng.uniform(0.0, 1e-2)
        u = linalg.expm_unitary(linalg.pauli_operator(*c), dt)
        worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(2)))))
    return _result("expm-unitarity", worst, 1e-10)


def check_eigh_reconstruction(rng) -> CheckResult:
    worst = 0.0
    for _ in range(2_000):
        h = linalg.pauli_operator(*rng.uniform(-1e4, 1e4, size=4))
        w, v = linalg.eigh(h)
        err = np.max(np.abs((v * w) @ v.conj().T - h))
        worst = max(worst, float(err / (1.0 + np.max(np.abs(h)))))
    return _result("eigh-reconstruction", worst, 1e-9)


def check_fidelity_symmetry(rng) -> CheckResult:
    worst = 0.0
    for _ in range(2_000):
        a, b = _random_density(rng), _random_density(rng)
        f_ab, f_ba = linalg.fidelity(a, b), linalg.fidelity(b, a)
        worst = max(worst, abs(f_ab - f_ba))
        if not (0.0 <= f_ab <= 1.0):
            return CheckResult("fidelity-symmetry", False, f"out of range: {f_ab}")
    return _result("fidelity-symmetry", worst, 1e-12)


def check_tensor_partial_trace(rng) -> CheckResult:
    worst = 0.0
    for _ in range(2_000):
        a, b = _random_density(rng), _random_density(rng)
        joint = linalg.tensor(a, b)
        worst = max(worst, float(np.max(np.abs(linalg.partial_trace(joint, 1) - a))))
        worst = max(worst, float(np.max(np.abs(linalg.partial_trace(joint, 2) - b))))
    return _result("tensor-partial-trace", worst, 1e-12)


def check_schedule_derivative(rng) -> CheckResult:
    ramp = RampSchedule.from_endpoints(0.0, 2500.0, 1e-3)
    peak = abs(ramp.amplitude) / (4 * ramp.tau)
    eps = 1e-6 * ramp.tau
    worst = 0.0
    for t in rng.uniform(2 * eps, ramp.tau - 2 * eps, size=1_000):
        fd = (ramp.value(t + eps) - ramp.value(t - eps)) / (2 * eps)
        worst = max(worst, abs(fd - ramp.derivative(t)) / peak)
    return _result("schedule-derivative", worst, 1e-6)


def check_cd_tracking() -> CheckResult:
    """STA drive must hold the state on the instantaneous ground state at
    every point along the ramp, not just at the end."""
    from .propagator import _step_unitaries

    tau, n = 200e-6, 4096
    model = LZModel.expansion(1000.0, 2500.0, tau)
    spec = EvolutionSpec(model, Mode.STA, tau, n)
    steps = _step_unitaries(spec)
    _, v0 = linalg.eigh(model.h0(0.0))
    rho = np.outer(v0[:, 0], v0[:, 0].conj())
    u = np.eye(2, dtype=complex)
    worst = 0.0
    for k in range(n):
        u = steps[k] @ u
        if (k + 1) % 256 == 0:
            t = (k + 1) * tau / n
            _, vt = linalg.eigh(model.h0(t))
            target = np.outer(vt[:, 0], vt[:, 0].conj())
            worst = max(worst, 1.0 - linalg.fidelity(u @ rho @ u.conj().T, target))
    return _result("cd-tracking", worst, 1e-6)


def check_propagator_unitarity() -> CheckResult:
    worst = 0.0
    model = LZModel.expansion(1000.0, 2500.0, 1e-3)
    for n in (2, 7, 64, 4096):
        for mode in (Mode.NA, Mode.STA):
            u = total_unitary(EvolutionSpec(model, mode, 1e-3, n))
            worst = max(worst, float(np.max(np.abs(u.conj().T @ u - np.eye(2)))))
    return _result("propagator-unitarity", worst, 1e-10)


def check_second_order_convergence() -> CheckResult:
    """Error against a 4x-finer reference must shrink ~4x per step doubling."""
    model = LZModel.expansion(1000.0, 2500.0, 1e-3)
    spec = EvolutionSpec(model, Mode.NA, 1e-3, 64)
    ref = total_unitary(spec.with_steps(64 * 16))
    errs = [float(np.max(np.abs(total_unitary(spec.with_steps(64 * 2**k)) - ref)))
            for k in range(3)]
    ratios = [errs[k] / errs[k + 1] for k in range(2)]
    ok = all(2.0 <= r <= 8.0 for r in ratios)
    return CheckResult("second-order-convergence", ok,
                       f"dyadic error ratios {ratios[0]:.2f}, {ratios[1]:.2f} (expect ~4)")


def check_spectrum_preservation(rng) -> CheckResult:
    model = LZModel.expansion(1000.0, 2500.0, 1e-3)
    spec = EvolutionSpec(model, Mode.NA, 1e-3, 512)
    worst = 0.0
    for _ in range(50):
        rho = _random_density(rng)
        out = evolve(rho, spec)
        worst = max(worst, float(np.max(np.abs(
            np.linalg.eigvalsh(out) - np.linalg.eigvalsh(rho)))))
    return _result("spectrum-preservation", worst, 1e-10)


def check_gibbs_commutation(rng) -> CheckResult:
    worst = 0.0
    for _ in range(500):
        h = linalg.pauli_operator(0.0, *rng.uniform(-5e3, 5e3, size=3))
        rho = gibbs(h, BathSpec(rng.uniform(0.5, 50.0), Role.COLD))
        comm = h @ rho - rho @ h
        worst = max(worst, float(np.max(np.abs(comm))) / (1.0 + np.max(np.abs(h))))
    return _result("gibbs-commutation", worst, 1e-12)


def check_first_law() -> CheckResult:
    worst = 0.0
    for mode in Mode:
        for tau in (200e-6, 1e-3):
            m = run_cycle(EngineConfig(tau_s=tau, mode=mode, n_steps=1024))
            worst = max(worst, abs(m.w2_pev + m.w4_pev + m.q1_pev + m.q3_pev))
    return _result("first-law-closure", worst, 1e-9)


def check_spin_temperature_roundtrip(rng) -> CheckResult:
    worst = 0.0
    for _ in range(1_000):
        kt = rng.uniform(0.2, 60.0)
        nu = rng.uniform(100.0, 5e3)
        # gap frequency = Pauli-vector norm, so the sz coefficient is nu itself
        h = linalg.pauli_operator(0.0, 0.0, 0.0, nu)
        rho = gibbs(h, BathSpec(kt, Role.COLD))
        p = np.sort(np.diag(rho).real)[::-1]
        kt_back = spin_temperature(p[0], p[1], nu)
        rho_back = gibbs(h, BathSpec(kt_back, Role.COLD))
        worst = max(worst, float(np.max(np.abs(rho_back - rho))))
    return _result("spin-temperature-roundtrip", worst, 1e-9)


def check_swap_equivalence() -> CheckResult:
    worst = 0.0
    energy_fields = ("w2_pev", "w4_pev", "q1_pev", "q3_pev", "cost2_pev", "cost4_pev")
    ratio_fields = ("eta_a", "eta1_sta", "eta2_sta")
    for mode in Mode:
        cfg = EngineConfig(tau_s=1e-3, mode=mode, n_steps=512)
        a = run_cycle(cfg, heating_via_swap=False)
        b = run_cycle(cfg, heating_via_swap=True)
        for name in energy_fields + ratio_fields:
            va, vb = getattr(a, name), getattr(b, name)
            if math.isnan(va) and math.isnan(vb):
                continue
            worst = max(worst, abs(va - vb))
    return _result("swap-thermalization-equivalence", worst, 1e-12)


def _default_sweep_rows():
    return run_sweep(SweepSpec())


def check_carnot_bound(rows) -> CheckResult:
    worst = -np.inf
    for row in rows:
        carnot = 1.0 - row.config.kt_cold_pev / row.config.kt_hot_pev
        for eta in (row.metrics.eta_a, row.metrics.eta1_sta, row.metrics.eta2_sta):
            if not math.isnan(eta) and eta > 0:
                worst = max(worst, eta - carnot)
    return _result("carnot-bound", worst, 1e-9)


def check_sta_work_invariance(rows) -> CheckResult:
    ideal = {(r.config.kt_hot_pev, r.config.tau_s): r.metrics
             for r in rows if r.config.mode == Mode.IDEAL_ADIABATIC}
    worst = 0.0
    for r in rows:
        if r.config.mode != Mode.STA:
            continue
        ref = ideal[(r.config.kt_hot_pev, r.config.tau_s)]
        worst = max(worst, abs(r.metrics.w2_pev - ref.w2_pev),
                    abs(r.metrics.w4_pev - ref.w4_pev))
    return _result("sta-work-invariance", worst, 1e-8)


def check_mode_ordering(rows) -> CheckResult:
    """STA efficiency (definition 2) beats NA efficiency wherever both engines
    actually operate with positive efficiency."""
    na = {(r.config.kt_hot_pev, r.config.tau_s): r.metrics
          for r in rows if r.config.mode == Mode.NA}
    worst = np.inf
    for r in rows:
        if r.config.mode != Mode.STA:
            continue
        m_na = na[(r.config.kt_hot_pev, r.config.tau_s)]
        if FLAG_NOT_OPERATING in m_na.flags or FLAG_NOT_OPERATING in r.metrics.flags:
            continue
        if m_na.eta_a > 0 and r.metrics.eta2_sta > 0:
            worst = min(worst, r.metrics.eta2_sta - m_na.eta_a)
    return _result("mode-ordering", worst, -1e-9, sense=">=")


def check_eta1_dominates_eta2(rows) -> CheckResult:
    worst = np.inf
    for r in rows:
        m = r.metrics
        if r.config.mode != Mode.STA or math.isnan(m.eta1_sta):
            continue
        if m.q3_pev > 0 and -(m.w2_pev + m.w4_pev) <= m.q3_pev:
            worst = min(worst, m.eta1_sta - m.eta2_sta)
    return _result("eta1-dominates-eta2", worst, -1e-12, sense=">=")


def check_asymptotic_merge() -> CheckResult:
    """NA efficiency approaches the quasi-static one as tau doubles."""
    gaps = []
    for tau, n in ((2.25e-3, 4096), (4.5e-3, 8192), (9e-3, 16384), (18e-3, 32768)):
        na = run_cycle(EngineConfig(tau_s=tau, mode=Mode.NA, n_steps=n))
        ideal = run_cycle(EngineConfig(tau_s=tau, mode=Mode.IDEAL_ADIABATIC))
        gaps.append(abs(na.eta_a - ideal.eta_a))
    ok = all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 1))
    return CheckResult("asymptotic-merge", ok,
                       "gap sequence " + ", ".join(f"{g:.2e}" for g in gaps))


def check_cost_decreasing() -> CheckResult:
    taus = [200e-6 * 2**k for k in range(5)]
    ok = True
    detail = []
    for functional in (CostFunctional.GAP_WEIGHTED_INTENSITY,
                       CostFunctional.TIME_AVERAGED_NORM):
        costs = [sta_cost(EngineConfig(tau_s=t, mode=Mode.STA, n_steps=1024,
                                       cost_functional=functional), Stroke.EXPANSION)
                 for t in taus]
        mono = all(costs[i + 1] < costs[i] for i in range(len(costs) - 1))
        ok = ok and mono
        detail.append(f"{functional.value}: {'decreasing' if mono else 'NOT decreasing'}")
    return CheckResult("cost-decreasing", ok, "; ".join(detail))


def run_all() -> list[CheckResult]:
    rng = np.random.default_rng(SEED)
    results = [
        check_pauli_roundtrip(rng),
        check_expm_unitarity(rng),
        check_eigh_reconstruction(rng),
        check_fidelity_symmetry(rng),
        check_tensor_partial_trace(rng),
        check_schedule_derivative(rng),
        check_cd_tracking(),
        check_propagator_unitarity(),
        check_second_order_convergence(),
        check_spectrum_preservation(rng),
        check_gibbs_commutation(rng),
        check_first_law(),
        check_spin_temperature_roundtrip(rng),
        check_swap_equivalence(),
    ]
    rows = _default_sweep_rows()
    results += [
        check_carnot_bound(rows),
        check_sta_work_invariance(rows),
        check_mode_ordering(rows),
        check_eta1_dominates_eta2(rows),
        check_asymptotic_merge(),
        check_cost_decreasing(),
    ]
    return results


def render_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:32s} {r.detail}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
