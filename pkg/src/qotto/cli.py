"""Command-line front end: single cycle runs, sweeps, and the validation suite.

Exit codes: 0 success, 1 internal/runtime error (e.g. unwritable output),
2 configuration error (unparseable config, unknown key, operating-condition
violation, empty grids).
"""

import argparse
import configparser
import json
import math
import sys

from .engine import ConfigurationError, CostFunctional, EngineConfig, run_cycle
from .model import Mode
from .propagator import DEFAULT_STEPS
from .sweep import SweepSpec, default_tau_grid, row_record, run_sweep, write_sweep, SweepRow
from .thermo import TEMPERATURE_PRESETS

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2

_MODE_NAMES = {m.value: m for m in Mode}
_COST_NAMES = {c.value: c for c in CostFunctional}

_ENGINE_KEYS = {
    "tau_s", "bx_hz", "nu_z_max_hz", "kt_cold_pev", "kt_hot_pev",
    "mode", "n_steps", "cost_functional", "thermalization_s",
}
_SWEEP_KEYS = {
    "tau_start_s", "tau_stop_s", "tau_step_s", "tau_grid_s",
    "kt_hot_pev", "kt_cold_pev", "modes",
    "bx_hz", "nu_z_max_hz", "n_steps", "cost_functional", "thermalization_s",
}


class ConfigFileError(Exception):
    """Bad config file; message names the offending key or section."""


def _parse_mode(text: str) -> Mode:
    if text not in _MODE_NAMES:
        raise ConfigFileError(
            f"key 'mode': unknown value {text!r} (choose from {sorted(_MODE_NAMES)})")
    return _MODE_NAMES[text]


def _parse_cost(text: str) -> CostFunctional:
    if text not in _COST_NAMES:
        raise ConfigFileError(
            f"key 'cost_functional': unknown value {text!r} "
            f"(choose from {sorted(_COST_NAMES)})")
    return _COST_NAMES[text]


def _float(section, key):
    try:
        return float(section[key])
    except ValueError as exc:
        raise ConfigFileError(f"key {key!r}: not a number ({section[key]!r})") from exc


def _load_config(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigFileError(f"cannot read config file {path!r}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigFileError(f"cannot parse config file {path!r}: {exc}") from exc
    return parser


def _check_keys(section, allowed, section_name):
    for key in section:
        if key not in allowed:
            raise ConfigFileError(f"unknown key {key!r} in section [{section_name}]")


def engine_config_from_args(args) -> EngineConfig:
    values = {
        "tau_s": 1e-3,
        "mode": Mode.IDEAL_ADIABATIC,
        "n_steps": args.steps if args.steps else DEFAULT_STEPS,
    }
    if args.preset:
        cold, hots = TEMPERATURE_PRESETS[args.preset]
        values["kt_cold_pev"] = cold
        values["kt_hot_pev"] = hots[0]
    if args.cost_functional:
        values["cost_functional"] = _parse_cost(args.cost_functional)
    if args.config:
        parser = _load_config(args.config)
        if not parser.has_section("engine"):
            raise ConfigFileError("config file is missing the [engine] section")
        section = parser["engine"]
        _check_keys(section, _ENGINE_KEYS, "engine")
        for key in ("tau_s", "bx_hz", "nu_z_max_hz", "kt_cold_pev", "kt_hot_pev",
                    "thermalization_s"):
            if key in section:
                values[key] = _float(section, key)
        if "n_steps" in section:
            values["n_steps"] = int(_float(section, "n_steps"))
        if "mode" in section:
            values["mode"] = _parse_mode(section["mode"])
        if "cost_functional" in section:
            values["cost_functional"] = _parse_cost(section["cost_functional"])
        if args.steps:
            values["n_steps"] = args.steps
    return EngineConfig(**values)


def sweep_spec_from_args(args) -> SweepSpec:
    values = {}
    if args.preset:
        cold, hots = TEMPERATURE_PRESETS[args.preset]
        values["cold_temperature"] = cold
        values["hot_temperatures"] = hots
    if args.steps:
        values["n_steps"] = args.steps
    if args.cost_functional:
        values["cost_functional"] = _parse_cost(args.cost_functional)
    if args.config:
        parser = _load_config(args.config)
        if not parser.has_section("sweep"):
            raise ConfigFileError("config file is missing the [sweep] section")
        section = parser["sweep"]
        _check_keys(section, _SWEEP_KEYS, "sweep")
        if "tau_grid_s" in section:
            values["tau_grid"] = tuple(
                float(x) for x in section["tau_grid_s"].split(","))
        elif {"tau_start_s", "tau_stop_s", "tau_step_s"} & set(section):
            start = _float(section, "tau_start_s") if "tau_start_s" in section else 200e-6
            stop = _float(section, "tau_stop_s") if "tau_stop_s" in section else 2250e-6
            step = _float(section, "tau_step_s") if "tau_step_s" in section else 50e-6
            n = int(round((stop - start) / step))
            values["tau_grid"] = tuple(start + k * step for k in range(n + 1))
        if "kt_hot_pev" in section:
            values["hot_temperatures"] = tuple(
                float(x) for x in section["kt_hot_pev"].split(","))
        if "kt_cold_pev" in section:
            values["cold_temperature"] = _float(section, "kt_cold_pev")
        if "modes" in section:
            names = [x.strip() for x in section["modes"].split(",") if x.strip()]
            values["modes"] = tuple(_parse_mode(x) for x in names)
        for key in ("bx_hz", "nu_z_max_hz", "thermalization_s"):
            if key in section:
                values[key] = _float(section, key)
        if "n_steps" in section and not args.steps:
            values["n_steps"] = int(_float(section, "n_steps"))
    return SweepSpec(**values)


def _metrics_json(cfg: EngineConfig, metrics) -> str:
    rec = row_record(SweepRow(cfg, metrics))
    rec["P_STA_raw"] = metrics.p_sta_raw_pev_per_s
    rec["tau_cycle_s"] = cfg.tau_cycle_s
    for key, val in rec.items():
        if isinstance(val, float) and math.isnan(val):
            rec[key] = None
    return json.dumps(rec, indent=1)


def cmd_run(args) -> int:
    cfg = engine_config_from_args(args)
    metrics = run_cycle(cfg)
    text = _metrics_json(cfg, metrics)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = sweep_spec_from_args(args)
    rows = run_sweep(spec)
    out = args.out or "sweep.csv"
    if args.per_temperature:
        for kt in sorted(spec.hot_temperatures):
            subset = [r for r in rows if r.config.kt_hot_pev == kt]
            stem, dot, ext = out.rpartition(".")
            path = f"{stem}.kt{kt:g}.{ext}" if dot else f"{out}.kt{kt:g}"
            write_sweep(subset, path, args.format)
            print(f"wrote {len(subset)} rows to {path}")
    else:
        write_sweep(rows, out, args.format)
        print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def cmd_validate(_args) -> int:
    from .validate import render_report, run_all

    results = run_all()
    print(render_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qotto",
        description="Spin-1/2 quantum Otto engine simulator with "
                    "counter-adiabatic driving")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI-style configuration file")
    common.add_argument("--out", help="output file path")
    common.add_argument("--steps", type=int, help="propagator step count override")
    common.add_argument("--cost-functional", choices=sorted(_COST_NAMES),
                        help="cost strategy for the counter-adiabatic drive")
    common.add_argument("--preset", choices=sorted(TEMPERATURE_PRESETS),
                        help="named spin-temperature set")

    p_run = sub.add_parser("run", parents=[common],
                           help="run a single cycle, print metrics as JSON")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="run a driving-time/temperature sweep")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--per-temperature", action="store_true",
                         help="write one output file per hot temperature")
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser("validate", help="run the full invariant suite")
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigFileError, ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
