"""Command-line front end: ``pwm-lab {synth,spectrum,sweep,optimize,compare}``."""

from __future__ import annotations

import argparse
import os
import sys
import traceback
from pathlib import Path

import numpy as np

from .errors import PwmLabError
from .io import (
    REPORT_COLUMNS,
    STRATEGIES,
    export_csv,
    format_value,
    load_config,
    report_row,
    spectrum_rows,
)
from .spectrum import ANALYZER_HARMONIC_LIMIT, distortion_report, thd
from .strategies import FMTC3
from .sweep import GRID_STEP, analyze_strategy, compare_strategies, optimize_k, sweep_k

PROG = "pwm-lab"


def _k_of(strategy):
    return strategy.k if isinstance(strategy, FMTC3) else None


def _a_m_of(strategy):
    if isinstance(strategy, FMTC3):
        return strategy.carrier_spec().law.a_m
    return None


def _out(cfg, name: str) -> Path:
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir / name


def _tag(cfg) -> str:
    if cfg.strategy == "fmtc3":
        return f"fmtc3_k{cfg.k:g}_mbar{cfg.m_bar:g}"
    return f"{cfg.strategy}_m{cfg.m}"


def cmd_synth(cfg, args) -> int:
    analysis = analyze_strategy(cfg.strategy_object(), cfg.analysis())
    waves = analysis.waveforms
    a, b, c = waves.pole
    t = a.times
    rows = zip(t, a.samples, b.samples, c.samples, waves.ab.samples, waves.carrier, waves.modulator)
    path = export_csv(
        ("t", "V_A", "V_B", "V_C", "V_AB", "carrier", "modulator"),
        rows,
        _out(cfg, args.output or f"waveform_{_tag(cfg)}.csv"),
    )
    print(f"wrote {path} ({t.size} samples)")
    return 0


def cmd_spectrum(cfg, args) -> int:
    strategy = cfg.strategy_object()
    analysis = analyze_strategy(strategy, cfg.analysis())
    spectrum = analysis.line_spectrum if args.signal == "ab" else analysis.pole_spectrum
    tag = _tag(cfg)
    path = export_csv(
        ("order", "amplitude_pu", "phase"),
        spectrum_rows(spectrum, cfg.max_order, cfg.dc_link),
        _out(cfg, args.output or f"spectrum_{args.signal}_{tag}.csv"),
    )
    report = distortion_report(spectrum, cfg.m_bar, cfg.harmonic_limit, cfg.dc_link)
    report_path = export_csv(
        REPORT_COLUMNS,
        [report_row(_k_of(strategy), _a_m_of(strategy), report)],
        _out(cfg, f"report_{args.signal}_{tag}.csv"),
    )
    print(f"{strategy.label} V_{args.signal.upper()}")
    print(f"  fundamental   {format_value(report.fundamental_pu)} pu")
    for limit in sorted({ANALYZER_HARMONIC_LIMIT, cfg.harmonic_limit}):
        print(f"  THD(<= {limit:3d})  {thd(spectrum, limit):.2f} %")
    print(f"  DF            {report.df_percent:.4f} %")
    print(f"  LOH           {report.loh_order}")
    print(f"  cluster order {format_value(report.central_cluster_order)}")
    print(f"wrote {path}")
    print(f"wrote {report_path}")
    return 0


def _k_values(cfg):
    if cfg.k_values:
        return cfg.k_values
    return tuple(np.round(np.arange(0.0, cfg.k_max + 1e-9, GRID_STEP), 10))


def cmd_sweep(cfg, args) -> int:
    result = sweep_k(_k_values(cfg), round(cfg.m_bar), cfg.analysis())
    path = export_csv(
        REPORT_COLUMNS,
        (report_row(e.k, e.a_m, e.report) for e in result.entries),
        _out(cfg, args.output or "sweep.csv"),
    )
    for err in result.errors:
        print(f"{PROG}: warning: sweep point K={err.k:g} failed: {err.message}", file=sys.stderr)
    print(f"wrote {path} ({len(result.entries)} points)")
    return 0


def cmd_optimize(cfg, args) -> int:
    profile = cfg.motor() if cfg.objective == "sensitivity" else None
    result = optimize_k(
        cfg.objective,
        round(cfg.m_bar),
        (cfg.k_min, cfg.k_max),
        cfg.tolerance,
        cfg.analysis(),
        profile,
    )
    path = export_csv(("K", "objective"), result.trace, _out(cfg, args.output or f"optimize_{cfg.objective}.csv"))
    flag = " (grid-only)" if result.grid_only else ""
    print(f"K* = {format_value(result.k)}  {cfg.objective} = {format_value(result.value)}{flag}")
    print(f"wrote {path}")
    return 0


def cmd_compare(cfg, args) -> int:
    names = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for name in names:
        if name not in STRATEGIES:
            raise PwmLabError(f"unknown strategy {name!r}")
    strategies = [cfg.strategy_object(name) for name in names]
    rows = compare_strategies(strategies, cfg.analysis())
    header = ("strategy",) + REPORT_COLUMNS
    table = [
        (label,) + report_row(_k_of(s), _a_m_of(s), report)
        for s, (label, report) in zip(strategies, rows)
    ]
    path = export_csv(header, table, _out(cfg, args.output or "compare.csv"))
    print(f"{'strategy':<24}{'V1_pu':>10}{'THD_pct':>10}{'DF_pct':>10}{'LOH':>6}{'cluster':>10}")
    for label, report in rows:
        cluster = report.central_cluster_order
        print(
            f"{label:<24}{report.fundamental_pu:>10.4f}{report.thd_percent:>10.2f}"
            f"{report.df_percent:>10.4f}{str(report.loh_order):>6}"
            f"{'' if cluster is None else f'{cluster:.2f}':>10}"
        )
    print(f"wrote {path}")
    return 0


COMMANDS = {
    "synth": cmd_synth,
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "compare": cmd_compare,
}

# flag name -> RunConfig field
CONFIG_FLAGS = (
    ("--strategy", "strategy", str, "spwm | hispwm | fmtc3 (default fmtc3)"),
    ("--k", "k", float, "truncation level K"),
    ("--mbar", "mbar", float, "mean modulation order (pulses per period)"),
    ("--am", "am", float, "carrier scale A_M (solved from K and mbar when omitted)"),
    ("--m", "m", int, "fixed carrier order for spwm/hispwm (default 15)"),
    ("--fundamental-hz", "fundamental_hz", float, "modulating frequency (default 50)"),
    ("--dc-link", "dc_link", float, "DC-link voltage E (default 1, per unit)"),
    ("--samples-per-period", "samples_per_period", int, "default 49152"),
    ("--n-periods", "n_periods", int, "default 1"),
    ("--harmonic-limit", "harmonic_limit", int, "highest order in THD/DF (default 100)"),
    ("--amplitude-index", "amplitude_index", float, "modulation depth (default 1)"),
    ("--max-order", "max_order", int, "highest order written to spectrum CSVs (default 200)"),
    ("--out-dir", "out_dir", str, "output directory (default: $PWM_LAB_OUT or .)"),
    ("--k-values", "k_values", str, "sweep: comma-separated K list (default 0..k-max step 0.05)"),
    ("--objective", "objective", str, "optimize: thd | df | sensitivity"),
    ("--k-min", "k_min", float, "optimize: lower K bound (default 0)"),
    ("--k-max", "k_max", float, "optimize/sweep: upper K bound (default 0.7)"),
    ("--tolerance", "tolerance", float, "optimize: final bracket width (default 1e-3)"),
    ("--rotor-bars", "rotor_bars", int, "motor profile (default 30)"),
    ("--pole-pairs", "pole_pairs", int, "motor profile (default 2)"),
    ("--slip", "slip", float, "motor profile (default 0)"),
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--output", help="output file name inside the output directory")
    for flag, dest, kind, help_text in CONFIG_FLAGS:
        common.add_argument(flag, dest=dest, type=kind, default=None, help=help_text)

    parser = argparse.ArgumentParser(prog=PROG, description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synth", parents=[common], help="write the three-phase waveform CSV")
    spectrum = sub.add_parser("spectrum", parents=[common], help="spectrum CSV and distortion report")
    spectrum.add_argument("--signal", choices=("ab", "a"), default="ab",
                          help="line-to-line V_AB (default) or pole voltage V_A")
    sub.add_parser("sweep", parents=[common], help="FMTC3 distortion versus K")
    sub.add_parser("optimize", parents=[common], help="search K for minimum THD, DF or sensitivity")
    compare = sub.add_parser("compare", parents=[common], help="compare strategies side by side")
    compare.add_argument("--strategies", default="spwm,hispwm,fmtc3")
    return parser


def _error_origin(exc: BaseException) -> str:
    module = "pwm_lab"
    tb = exc.__traceback__
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("pwm_lab"):
            module = name
        tb = tb.tb_next
    return module


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {dest: getattr(args, dest) for _, dest, _, _ in CONFIG_FLAGS}
    try:
        cfg = load_config(args.config, overrides)
        if args.command in ("synth", "spectrum") and cfg.strategy == "fmtc3" and cfg.k is None:
            raise PwmLabError("strategy fmtc3 needs --k")
        if args.command == "compare" and cfg.k is None:
            cfg = load_config(args.config, {**overrides, "k": "0.5"})
        return COMMANDS[args.command](cfg, args)
    except (PwmLabError, OSError) as exc:
        print(f"{PROG}: error: {_error_origin(exc)}: {exc}", file=sys.stderr)
        if "PWM_LAB_DEBUG" in os.environ:
            traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
