"""Command-line interface.

Exit codes: 0 success, 1 configuration or numerical error, 2 computed but
at least one regime flag failed.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import sys
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    RunConfig,
    config_from_mapping,
    config_to_mapping,
    dumps_config,
    load_config,
)
from .dynamics import evolve, persistence
from .presets import PRESETS, get_preset
from .rates import (
    METHODS,
    DimerSystem,
    NaiveEstimates,
    RateSet,
    compute_rates,
    dimensionless_ratios,
    naive_estimates,
)
from .spectral import QuadratureError, RegimeError

EXIT_OK, EXIT_ERROR, EXIT_REGIME = 0, 1, 2


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _naive(system: DimerSystem) -> NaiveEstimates:
    bath = system.bath
    return naive_estimates(bath.reorganization_energy, bath.omega_c, system.temperature)


def _describe(cfg: RunConfig, system: DimerSystem) -> str:
    b = cfg.bath
    bath = ", ".join(f"{k}={_fmt(v)}" for k, v in dataclasses.asdict(b).items()
                     if v is not None and k != "type")
    return (f"eps_cm1={_fmt(system.eps)} delta_cm1={_fmt(system.delta)} "
            f"temperature_K={_fmt(system.temperature)} bath={b.type}({bath}) "
            f"method={cfg.numeric.method}")


def _rates_line(rates: RateSet) -> str:
    return (f"delta_eff_cm1={_fmt(rates.delta_eff)} delta_b_cm1={_fmt(rates.delta_b)} "
            f"T_b_K={_fmt(rates.crossover_temperature)} omega_cm1={_fmt(rates.rabi)} "
            f"gamma_r_cm1={_fmt(rates.gamma_r)} gamma_cm1={_fmt(rates.gamma)}")


def _flags_text(rates: RateSet) -> str:
    failed = rates.flags.failed()
    return "all ok" if not failed else "FAILED: " + ", ".join(failed)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], columns: list[str], rows) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([r if isinstance(r, str) else _fmt(r) for r in row])
    return buf.getvalue()


def _warn_regime(rates: RateSet) -> None:
    if not rates.flags.all_ok:
        print(f"warning: regime check {_flags_text(rates)}", file=sys.stderr)


def rates_report(cfg: RunConfig, source: str) -> tuple[str, str, RateSet]:
    """Human-readable table and CSV text for the ``rates`` command."""
    system = cfg.dimer()
    rates = compute_rates(system, cfg.numeric.method, cfg.quadrature())
    naive = _naive(system)
    ratios = dimensionless_ratios(system)
    rows = [
        ("delta_eff", rates.delta_eff, "cm^-1"),
        ("delta_b", rates.delta_b, "cm^-1"),
        ("T_b", rates.crossover_temperature, "K"),
        ("omega", rates.rabi, "cm^-1"),
        ("period_2pi_over_omega", rates.period_fs, "fs"),
        ("gamma_r", rates.gamma_r, "cm^-1"),
        ("gamma_r_inv", rates.relaxation_time_fs, "fs"),
        ("gamma", rates.gamma, "cm^-1"),
        ("gamma_inv", rates.decoherence_time_fs, "fs"),
        ("tau_G", naive.tau_g_fs, "fs"),
        ("gamma_phi", naive.gamma_phi, "cm^-1"),
        ("gamma_phi_inv", naive.gamma_phi_time_fs, "fs"),
        ("eps_over_2delta", ratios["eps_over_2delta"], "1"),
        ("K", ratios["K"], "1"),
        ("two_delta_over_omega_c", ratios["two_delta_over_omega_c"], "1"),
        ("two_delta_over_kT", ratios["two_delta_over_kT"], "1"),
    ]
    flag_rows = [(name, str(getattr(rates.flags, name)).lower(), "flag")
                 for name in ("bias_ratio_ok", "low_temperature_ok", "weak_coupling_ok")]

    lines = [f"source: {source}", f"system: {_describe(cfg, system)}", ""]
    width = max(len(r[0]) for r in rows + flag_rows)
    for name, value, unit in rows:
        lines.append(f"  {name:<{width}}  {value:12.4f}  {unit}")
    for name, value, _ in flag_rows:
        lines.append(f"  {name:<{width}}  {value:>12}")
    lines.append(f"\nregime: {_flags_text(rates)}")
    table = "\n".join(lines) + "\n"

    header = ["dimer-coherence rates", f"source: {source}", f"system: {_describe(cfg, system)}"]
    text = _csv_text(header, ["quantity", "value", "unit"], rows + flag_rows)
    return table, text, rates


def dynamics_csv(cfg: RunConfig, source: str) -> tuple[str, RateSet]:
    system = cfg.dimer()
    rates = compute_rates(system, cfg.numeric.method, cfg.quadrature())
    traj = evolve(rates, system, cfg.numeric.t_max_fs, cfg.numeric.samples)
    report = persistence(rates, cfg.numeric.threshold)
    header = [
        "dimer-coherence dynamics",
        f"source: {source}",
        f"system: {_describe(cfg, system)}",
        f"rates: {_rates_line(rates)}",
        f"persistence: threshold={_fmt(report.threshold)} time_fs={_fmt(report.time_fs)}",
        f"regime: {_flags_text(rates)}",
    ]
    rows = zip(traj.t_fs, traj.P, traj.rho1, traj.rho2)
    return _csv_text(header, ["t_fs", "P", "rho1", "rho2"], rows), rates


def sweep_csv(cfg: RunConfig, source: str, ratio_min: float, ratio_max: float,
              n_points: int) -> tuple[str, bool]:
    """Sweep over ``eps / 2 Delta``; returns CSV text and whether all flags passed."""
    if not 0 < ratio_min < ratio_max < 1:
        raise ValueError("sweep range must satisfy 0 < ratio_min < ratio_max < 1")
    if n_points < 2:
        raise ValueError("sweep needs at least 2 points")
    base = cfg.dimer()
    naive = _naive(base)
    control = cfg.quadrature()
    rows, all_ok = [], True
    for ratio in np.linspace(ratio_min, ratio_max, n_points):
        system = dataclasses.replace(base, eps=float(ratio) * base.tunneling)
        rates = compute_rates(system, cfg.numeric.method, control)
        all_ok &= rates.flags.all_ok
        rows.append((ratio, rates.relaxation_time_fs, rates.decoherence_time_fs,
                     naive.gamma_phi_time_fs, naive.tau_g_fs))
    header = [
        "dimer-coherence sweep",
        f"source: {source}",
        f"system: {_describe(cfg, base)} (eps varied)",
        f"regime: {'all ok' if all_ok else 'FAILED at one or more points'}",
    ]
    columns = ["eps_over_2delta", "gamma_r_inv_fs", "gamma_inv_fs", "gamma_phi_inv_fs", "tau_G_fs"]
    return _csv_text(header, columns, rows), all_ok


def _load(args) -> tuple[RunConfig, str]:
    if args.preset:
        cfg, source = get_preset(args.preset), f"preset {args.preset}"
    else:
        cfg, source = load_config(args.config), f"config {args.config}"
    numeric = {}
    if args.method is not None:
        numeric["method"] = args.method
    for opt, key in (("t_max_fs", "t_max_fs"), ("samples", "samples"), ("threshold", "threshold")):
        value = getattr(args, opt, None)
        if value is not None:
            numeric[key] = value
    if numeric:
        cfg = dataclasses.replace(cfg, numeric=dataclasses.replace(cfg.numeric, **numeric))
        cfg = config_from_mapping(config_to_mapping(cfg))
    return cfg, source


def _out_path(args, cfg: RunConfig) -> str | None:
    return args.out or cfg.output.path


def cmd_rates(args) -> int:
    cfg, source = _load(args)
    table, text, rates = rates_report(cfg, source)
    sys.stdout.write(table)
    out = _out_path(args, cfg)
    if out:
        _emit(text, out)
    _warn_regime(rates)
    return EXIT_OK if rates.flags.all_ok else EXIT_REGIME


def cmd_dynamics(args) -> int:
    cfg, source = _load(args)
    text, rates = dynamics_csv(cfg, source)
    _emit(text, _out_path(args, cfg))
    _warn_regime(rates)
    return EXIT_OK if rates.flags.all_ok else EXIT_REGIME


def cmd_sweep(args) -> int:
    cfg, source = _load(args)
    text, all_ok = sweep_csv(cfg, source, args.ratio_min, args.ratio_max, args.points)
    _emit(text, _out_path(args, cfg))
    if not all_ok:
        print("warning: regime check failed at one or more sweep points", file=sys.stderr)
    return EXIT_OK if all_ok else EXIT_REGIME


def cmd_preset(args) -> int:
    if args.action == "list":
        sys.stdout.write("".join(f"{name}\n" for name in PRESETS))
        return EXIT_OK
    if not args.name:
        raise ValueError("preset dump needs a preset name")
    _emit(dumps_config(get_preset(args.name)), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the regime-warning exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dimer-coherence",
        description="Coherence lifetimes and population dynamics of a bath-coupled excitonic dimer.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS))
    source.add_argument("--config", metavar="PATH")
    common.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    common.add_argument("--method", choices=METHODS, help="rate evaluation path")

    p = sub.add_parser("rates", parents=[common], help="Omega, gamma_r, gamma and diagnostics")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("dynamics", parents=[common], help="site populations versus time")
    p.add_argument("--t-max-fs", type=float, dest="t_max_fs")
    p.add_argument("--samples", type=int)
    p.add_argument("--threshold", type=float, help="coherent-envelope persistence threshold")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("sweep", parents=[common], help="lifetimes versus eps/2Delta")
    p.add_argument("--ratio-min", type=float, default=0.05)
    p.add_argument("--ratio-max", type=float, default=0.95)
    p.add_argument("--points", type=int, default=19)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="list or dump built-in presets")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?", choices=sorted(PRESETS))
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, RegimeError, QuadratureError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
