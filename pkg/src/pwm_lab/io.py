"""Run configuration and CSV import/export.

Config files are flat ``key = value`` text, one setting per line, with keys
spelled like the command-line flags (``k``, ``mbar``, ``am``,
``samples-per-period`` ...).  ``#`` starts a comment.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, DomainError
from .spectrum import DEFAULT_HARMONIC_LIMIT
from .strategies import FMTC3, HISPWM, SPWM
from .sweep import K_SWEEP_MAX, AnalysisConfig, MotorSensitivityProfile
from .waveform import (
    DEFAULT_FUNDAMENTAL_HZ,
    DEFAULT_SAMPLES_PER_PERIOD,
    SampledWaveform,
    mean_order_from,
    orders_agree,
)

OUT_DIR_ENV = "PWM_LAB_OUT"
STRATEGIES = ("spwm", "hispwm", "fmtc3")
SIGNIFICANT_DIGITS = 12
# amplitudes below this (pu of E) are numerical noise and exported as zero
SPECTRUM_FLOOR = 1e-12

REPORT_COLUMNS = ("K", "A_M", "V1_pu", "THD_pct", "DF_pct", "LOH", "cluster_order")


@dataclass(frozen=True)
class RunConfig:
    strategy: str = "fmtc3"
    k: float | None = None
    mbar: float | None = None
    am: float | None = None
    m: int = 15
    fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ
    dc_link: float = 1.0
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD
    n_periods: int = 1
    harmonic_limit: int = DEFAULT_HARMONIC_LIMIT
    amplitude_index: float = 1.0
    max_order: int = 200
    out_dir: str = "."
    # sweep
    k_values: tuple | None = None
    # optimize
    objective: str = "thd"
    k_min: float = 0.0
    k_max: float = 0.7
    tolerance: float = 1e-3
    # motor profile
    rotor_bars: int = 30
    pole_pairs: int = 2
    slip: float = 0.0

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.k is not None and not 0.0 <= self.k <= K_SWEEP_MAX:
            raise DomainError(f"k={self.k} outside [0, {K_SWEEP_MAX}]")
        if None not in (self.k, self.mbar, self.am):
            implied = mean_order_from(self.am, self.k)
            if not orders_agree(implied, self.mbar):
                raise ConfigurationError(
                    f"inconsistent carrier parameters: mbar={self.mbar:g} but am={self.am:g} "
                    f"gives mbar={implied:.9g} at k={self.k:g}"
                )

    def fmtc3(self, k: float | None = None) -> FMTC3:
        k = self.k if k is None else k
        if k is None:
            raise ConfigurationError("strategy fmtc3 needs --k")
        if self.mbar is None and self.am is None:
            return FMTC3(k, 15)
        return FMTC3(k, self.mbar, self.am)

    @property
    def m_bar(self) -> float:
        """Pulses per period of the configured strategy."""
        if self.strategy != "fmtc3":
            return float(self.m)
        if self.mbar is not None:
            return float(self.mbar)
        if self.am is None or self.k is None:
            return 15.0
        return mean_order_from(self.am, self.k)

    def strategy_object(self, name: str | None = None):
        name = name or self.strategy
        if name == "spwm":
            return SPWM(self.m)
        if name == "hispwm":
            return HISPWM(self.m)
        return self.fmtc3()

    def analysis(self) -> AnalysisConfig:
        return AnalysisConfig(
            fundamental_hz=self.fundamental_hz,
            dc_link=self.dc_link,
            samples_per_period=self.samples_per_period,
            n_periods=self.n_periods,
            harmonic_limit=self.harmonic_limit,
            amplitude_index=self.amplitude_index,
        )

    def motor(self) -> MotorSensitivityProfile:
        base = MotorSensitivityProfile.bench_motor()
        return replace(base, rotor_bars=self.rotor_bars, pole_pairs=self.pole_pairs, slip=self.slip,
                       supply_hz=self.fundamental_hz)


def _field_types():
    return {f.name: f.type for f in fields(RunConfig)}


def _convert(key: str, raw):
    if raw is None or not isinstance(raw, str):
        return raw
    kind = _field_types()[key]
    text = raw.strip()
    try:
        if key == "k_values":
            return tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())
        if kind.startswith("int"):
            return int(text)
        if kind.startswith("float"):
            return float(text)
    except ValueError:
        raise ConfigurationError(f"cannot parse {key}={raw!r}") from None
    return text


def read_config_file(path) -> dict:
    """Parse a flat ``key = value`` file into a dict of RunConfig fields."""
    known = _field_types()
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in known:
                raise ConfigurationError(f"{path}:{lineno}: unknown setting {key!r}")
            values[key] = _convert(key, value)
    return values


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Build a validated RunConfig.

    Precedence, lowest first: defaults, config file, ``PWM_LAB_OUT`` (output
    directory only), ``overrides`` (command-line flags; ``None`` means unset).
    """
    values = read_config_file(path) if path else {}
    env_out = os.environ.get(OUT_DIR_ENV)
    if env_out:
        values["out_dir"] = env_out
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _convert(key, value)
    return RunConfig(**values)


# -- CSV ------------------------------------------------------------------


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        text = format(value, f".{SIGNIFICANT_DIGITS}g")
        return "0" if text == "-0" else text
    return str(value)


def export_csv(header, rows, path) -> Path:
    """Write a CSV with a header row, LF line endings and 12 significant digits."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def report_row(k, a_m, report):
    return (
        k,
        a_m,
        report.fundamental_pu,
        report.thd_percent,
        report.df_percent,
        report.loh_order,
        report.central_cluster_order,
    )


def spectrum_rows(spectrum, max_order: int, dc_link: float = 1.0):
    for n in range(min(max_order, spectrum.max_order) + 1):
        amp = spectrum.amplitudes[n] / dc_link
        if amp < SPECTRUM_FLOOR:
            yield (n, 0.0, 0.0)
        else:
            yield (n, amp, spectrum.phases[n])


def read_waveform_csv(path, column: str = "V_AB", fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ) -> SampledWaveform:
    """Re-ingest one column of a waveform CSV written by ``synth``."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if column not in (reader.fieldnames or ()):
            raise ConfigurationError(f"{path}: no column {column!r}")
        rows = [(float(r["t"]), float(r[column])) for r in reader]
    t = np.array([r[0] for r in rows])
    samples = np.array([r[1] for r in rows])
    if t.size < 2:
        raise ConfigurationError(f"{path}: need at least two samples")
    sample_rate = 1.0 / (t[1] - t[0])
    spp = round(sample_rate / fundamental_hz)
    return SampledWaveform(samples, spp * fundamental_hz, fundamental_hz, samples.size // spp)
