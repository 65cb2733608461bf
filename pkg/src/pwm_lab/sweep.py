"""Parameter sweeps over the truncation level K, strategy comparison, motor
slot-harmonic sensitivity scoring and the K optimiser."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import HarmonicSpectrum
from .errors import DomainError, PwmLabError, UndefinedMeasureError
from .spectrum import (
    DEFAULT_HARMONIC_LIMIT,
    DEFAULT_LOH_THRESHOLD,
    DistortionReport,
    distortion_report,
    harmonic_spectrum,
)
from .strategies import FMTC3, Strategy, strategy_order
from .waveform import (
    DEFAULT_FUNDAMENTAL_HZ,
    DEFAULT_SAMPLES_PER_PERIOD,
    ThreePhaseWaveforms,
    solve_a_m,
    synthesize_three_phase,
)

K_SWEEP_MAX = 0.9
K_DEFAULT_UPPER = 0.7
GRID_STEP = 0.05


@dataclass(frozen=True)
class AnalysisConfig:
    fundamental_hz: float = DEFAULT_FUNDAMENTAL_HZ
    dc_link: float = 1.0
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD
    n_periods: int = 1
    harmonic_limit: int = DEFAULT_HARMONIC_LIMIT
    loh_threshold: float = DEFAULT_LOH_THRESHOLD
    amplitude_index: float = 1.0


@dataclass
class StrategyAnalysis:
    strategy: Strategy
    waveforms: ThreePhaseWaveforms = field(repr=False)
    line_spectrum: HarmonicSpectrum = field(repr=False)
    pole_spectrum: HarmonicSpectrum = field(repr=False)
    report: DistortionReport


def analyze_strategy(strategy: Strategy, config: AnalysisConfig = AnalysisConfig()) -> StrategyAnalysis:
    """Synthesise the three-phase output of ``strategy`` and analyse ``V_AB``."""
    spec = strategy.carrier_spec(config.fundamental_hz)
    waves = synthesize_three_phase(
        strategy.modulating_wave(config.amplitude_index),
        spec,
        config.dc_link,
        config.samples_per_period,
        config.n_periods,
    )
    line = harmonic_spectrum(waves.ab)
    pole = harmonic_spectrum(waves.a)
    report = distortion_report(
        line,
        strategy_order(strategy),
        config.harmonic_limit,
        config.dc_link,
        config.loh_threshold,
    )
    return StrategyAnalysis(strategy, waves, line, pole, report)


# -- motor sensitivity ------------------------------------------------------


@dataclass(frozen=True)
class MotorSensitivityProfile:
    """Induction-motor geometry from which slot-harmonic orders are derived.

    ``weights`` maps harmonic order to a non-negative weight; orders missing
    from it get weight 1.
    """

    rotor_bars: int
    pole_pairs: int
    slip: float = 0.0
    supply_hz: float = DEFAULT_FUNDAMENTAL_HZ
    n_max: int = 2
    max_order: int = 100
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.rotor_bars < 1 or self.pole_pairs < 1:
            raise DomainError("rotor_bars and pole_pairs must be >= 1")
        if not 0.0 <= self.slip <= 0.1:
            raise DomainError(f"slip must lie in [0, 0.1], got {self.slip}")
        if any(w < 0 for w in self.weights.values()):
            raise DomainError("weights must be non-negative")

    @classmethod
    def bench_motor(cls) -> "MotorSensitivityProfile":
        """30 rotor bars, 2 pole pairs, no slip; orders up to the 50th harmonic."""
        return cls(rotor_bars=30, pole_pairs=2, slip=0.0, n_max=2, max_order=50)

    @property
    def sensitive_orders(self) -> frozenset:
        return derive_sensitive_orders(self)

    def weight(self, order: int) -> float:
        return float(self.weights.get(order, 1.0))


def derive_sensitive_orders(
    profile: MotorSensitivityProfile,
    n_max: int | None = None,
    max_order: int | None = None,
) -> frozenset:
    """Slot-harmonic orders ``n*bars/pp*(1-s)`` with +-2 sidebands, plus rotor
    MMF product orders ``2*(n*bars/pp +- 1)``, for n = 1..n_max.

    Only orders in ``[2, max_order]`` are kept.
    """
    n_max = profile.n_max if n_max is None else n_max
    max_order = profile.max_order if max_order is None else max_order
    ratio = profile.rotor_bars / profile.pole_pairs
    orders = set()
    for n in range(1, n_max + 1):
        slot = round(n * ratio * (1 - profile.slip))
        orders.update((slot - 2, slot, slot + 2))
        mmf = n * ratio
        orders.update((round(2 * (mmf - 1)), round(2 * (mmf + 1))))
    return frozenset(o for o in orders if 2 <= o <= max_order)


def sensitivity_score(spec: HarmonicSpectrum, profile: MotorSensitivityProfile) -> float:
    """Root-sum-square of weighted ``V_n / V_1`` over the profile's sensitive orders."""
    v1 = spec.fundamental if spec.max_order >= 1 else 0.0
    if not v1 > 0:
        raise UndefinedMeasureError("the fundamental amplitude is zero")
    total = 0.0
    for n in sorted(profile.sensitive_orders):
        if n <= spec.max_order:
            total += (profile.weight(n) * spec.amplitudes[n] / v1) ** 2
    return math.sqrt(total)


# -- sweeps -----------------------------------------------------------------


@dataclass(frozen=True)
class SweepEntry:
    k: float
    a_m: float
    report: DistortionReport
    sensitivity: float | None = None


@dataclass(frozen=True)
class SweepError:
    k: float
    message: str


@dataclass
class SweepResult:
    m_bar: int
    entries: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    strategy: str = FMTC3.name


def _check_k_range(k: float, upper: float = K_SWEEP_MAX) -> None:
    if not 0.0 <= k <= upper:
        raise DomainError(f"K={k} outside [0, {upper}]")


def sweep_k(
    k_values,
    m_bar: int = 15,
    config: AnalysisConfig = AnalysisConfig(),
    profile: MotorSensitivityProfile | None = None,
) -> SweepResult:
    """Analyse FMTC3 at each K (sorted ascending).

    A failing point is recorded in ``errors`` with its K and the sweep goes on.
    """
    result = SweepResult(m_bar=m_bar)
    for k in sorted(float(k) for k in k_values):
        try:
            _check_k_range(k)
            a_m = solve_a_m(k, m_bar)
            analysis = analyze_strategy(FMTC3(k, m_bar), config)
            score = None if profile is None else sensitivity_score(analysis.line_spectrum, profile)
        except PwmLabError as exc:
            result.errors.append(SweepError(k, f"{type(exc).__name__}: {exc}"))
            continue
        result.entries.append(SweepEntry(k, a_m, analysis.report, score))
    return result


def compare_strategies(strategies, config: AnalysisConfig = AnalysisConfig()) -> list:
    """One ``(label, DistortionReport)`` row per strategy under identical settings."""
    return [(s.label, analyze_strategy(s, config).report) for s in strategies]


# -- optimisation -----------------------------------------------------------

OBJECTIVES = ("thd", "df", "sensitivity")


def objective_value(
    objective: str,
    k: float,
    m_bar: int = 15,
    config: AnalysisConfig = AnalysisConfig(),
    profile: MotorSensitivityProfile | None = None,
) -> float:
    analysis = analyze_strategy(FMTC3(k, m_bar), config)
    if objective == "thd":
        return analysis.report.thd_percent
    if objective == "df":
        return analysis.report.df_percent
    if objective == "sensitivity":
        return sensitivity_score(analysis.line_spectrum, profile)
    raise DomainError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


@dataclass
class OptimizationResult:
    k: float
    value: float
    grid_only: bool
    trace: list = field(default_factory=list)


INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f, lo: float, hi: float, tol: float):
    """Minimise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo >= tol:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def optimize_k(
    objective: str = "thd",
    m_bar: int = 15,
    bounds: tuple = (0.0, K_DEFAULT_UPPER),
    tolerance: float = 1e-3,
    config: AnalysisConfig = AnalysisConfig(),
    profile: MotorSensitivityProfile | None = None,
    grid_step: float = GRID_STEP,
) -> OptimizationResult:
    """Coarse grid over ``bounds`` then golden-section refinement around the best point.

    When the refinement cannot beat the best grid point (the bracket is not
    unimodal) that grid point is returned with ``grid_only=True``.
    """
    if objective not in OBJECTIVES:
        raise DomainError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    if objective == "sensitivity" and profile is None:
        raise DomainError("the sensitivity objective needs a MotorSensitivityProfile")
    lo, hi = map(float, bounds)
    if not 0.0 <= lo <= hi <= K_SWEEP_MAX:
        raise DomainError(f"bounds must satisfy 0 <= lo <= hi <= {K_SWEEP_MAX}, got {bounds}")
    if not tolerance > 0:
        raise DomainError("tolerance must be positive")

    cache = {}
    trace = []

    def f(k):
        if k not in cache:
            cache[k] = objective_value(objective, k, m_bar, config, profile)
            trace.append((k, cache[k]))
        return cache[k]

    if hi - lo < tolerance:
        k = 0.5 * (lo + hi)
        return OptimizationResult(k, f(k), True, trace)

    n_steps = max(1, int(math.ceil((hi - lo) / grid_step - 1e-9)))
    grid = np.linspace(lo, hi, n_steps + 1)
    values = [f(float(k)) for k in grid]
    best = int(np.argmin(values))
    k_grid, v_grid = float(grid[best]), values[best]
    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, n_steps)])
    k_star, v_star = golden_section(f, a, b, tolerance)
    if v_star < v_grid:
        return OptimizationResult(k_star, v_star, False, trace)
    return OptimizationResult(k_grid, v_grid, True, trace)
