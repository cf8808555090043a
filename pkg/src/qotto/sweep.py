"""Parameter sweeps over driving time and hot-bath temperature.

Rows are computed by a thread pool over independent configurations and
assembled in a fixed lexicographic order (kT_hot, mode name, tau), so output
files are byte-identical across repeated runs on the same platform. The
QOTTO_THREADS environment variable overrides the worker count.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .engine import CostFunctional, CycleMetrics, EngineConfig, run_cycle
from .model import Mode
from .propagator import DEFAULT_STEPS

SCHEMA_VERSION = "qotto-sweep-v1"

CSV_COLUMNS = [
    "tau_s", "kT_hot_peV", "mode",
    "W2_peV", "W4_peV", "Q1_peV", "Q3_peV", "cost2_peV", "cost4_peV",
    "eta_A", "eta1_STA", "eta2_STA", "P_A", "P_STA",
    "fidelity_tracking", "flags",
]


def default_tau_grid() -> tuple[float, ...]:
    """200 us to 2250 us in 50 us steps."""
    return tuple(round(t, 10) * 1e-6 for t in range(200, 2251, 50))


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition plus shared engine settings."""

    tau_grid: tuple[float, ...] = field(default_factory=default_tau_grid)
    hot_temperatures: tuple[float, ...] = (6.45, 8.45)
    cold_temperature: float = 1.9
    modes: tuple[Mode, ...] = (Mode.IDEAL_ADIABATIC, Mode.NA, Mode.STA)
    bx_hz: float = 1000.0
    nu_z_max_hz: float = 2500.0
    n_steps: int = DEFAULT_STEPS
    cost_functional: CostFunctional = CostFunctional.GAP_WEIGHTED_INTENSITY
    thermalization_s: float = 0.0

    def __post_init__(self):
        if not self.tau_grid:
            raise ValueError("tau grid must not be empty")
        if not self.hot_temperatures:
            raise ValueError("hot temperature list must not be empty")
        if not self.modes:
            raise ValueError("mode list must not be empty")
        if self.cold_temperature <= 0 or min(self.hot_temperatures) <= 0:
            raise ValueError("temperatures must be positive")
        if min(self.tau_grid) <= 0:
            raise ValueError("driving times must be positive")

    def configs(self) -> list[EngineConfig]:
        """All grid points, already in output row order."""
        out = []
        for kt_hot in sorted(self.hot_temperatures):
            for mode in sorted(self.modes, key=lambda m: m.value):
                for tau in sorted(self.tau_grid):
                    out.append(EngineConfig(
                        tau_s=tau, bx_hz=self.bx_hz, nu_z_max_hz=self.nu_z_max_hz,
                        kt_cold_pev=self.cold_temperature, kt_hot_pev=kt_hot,
                        mode=mode, n_steps=self.n_steps,
                        cost_functional=self.cost_functional,
                        thermalization_s=self.thermalization_s))
        return out


@dataclass(frozen=True)
class SweepRow:
    config: EngineConfig
    metrics: CycleMetrics


def worker_count() -> int:
    env = os.environ.get("QOTTO_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"QOTTO_THREADS must be >= 1, got {n}")
        return n
    return min(8, os.cpu_count() or 1)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    configs = spec.configs()
    workers = worker_count()
    if workers == 1:
        metrics = [run_cycle(c) for c in configs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            metrics = list(pool.map(run_cycle, configs))
    return [SweepRow(c, m) for c, m in zip(configs, metrics)]


def _fmt(x: float) -> str:
    """12 significant digits; NaN spelled out."""
    if math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def row_record(row: SweepRow) -> dict:
    m, c = row.metrics, row.config
    return {
        "tau_s": c.tau_s,
        "kT_hot_peV": c.kt_hot_pev,
        "mode": c.mode.value,
        "W2_peV": m.w2_pev,
        "W4_peV": m.w4_pev,
        "Q1_peV": m.q1_pev,
        "Q3_peV": m.q3_pev,
        "cost2_peV": m.cost2_pev,
        "cost4_peV": m.cost4_pev,
        "eta_A": m.eta_a,
        "eta1_STA": m.eta1_sta,
        "eta2_STA": m.eta2_sta,
        "P_A": m.p_a_pev_per_s,
        "P_STA": m.p_sta_pev_per_s,
        "fidelity_tracking": m.fidelity_tracking,
        "flags": "|".join(m.flags),
    }


def render_csv(rows: list[SweepRow]) -> str:
    lines = [f"# schema={SCHEMA_VERSION}", ",".join(CSV_COLUMNS)]
    for row in rows:
        rec = row_record(row)
        cells = []
        for col in CSV_COLUMNS:
            val = rec[col]
            cells.append(_fmt(val) if isinstance(val, float) else str(val))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_json(rows: list[SweepRow]) -> str:
    records = []
    for row in rows:
        rec = row_record(row)
        for key, val in rec.items():
            if isinstance(val, float):
                # 12 significant digits, NaN mapped to null for strict JSON
                rec[key] = None if math.isnan(val) else float(f"{val:.12g}")
        records.append(rec)
    return json.dumps({"schema": SCHEMA_VERSION, "rows": records}, indent=1) + "\n"


def write_sweep(rows: list[SweepRow], path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        text = render_csv(rows)
    elif fmt == "json":
        text = render_json(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
