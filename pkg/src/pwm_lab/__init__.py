"""Synthesis and harmonic analysis of carrier-based PWM inverter waveforms with a
truncated cos^2 frequency-modulated carrier (FMTC3) and classic baselines."""

from .analytic import (
    AnalyticVoltageParams,
    HarmonicSpectrum,
    analytic_pole_voltage,
    commutation_angle_alpha,
    fourier_coefficients_numeric,
)
from .errors import ConfigurationError, DomainError, PwmLabError, UndefinedMeasureError
from .spectrum import (
    DistortionReport,
    central_cluster_order,
    df,
    distortion_report,
    harmonic_spectrum,
    lowest_order_harmonic,
    thd,
)
from .strategies import FMTC3, HISPWM, SPWM
from .sweep import (
    AnalysisConfig,
    MotorSensitivityProfile,
    OptimizationResult,
    SweepResult,
    analyze_strategy,
    compare_strategies,
    derive_sensitive_orders,
    optimize_k,
    sensitivity_score,
    sweep_k,
)
from .waveform import (
    CarrierSpec,
    FixedFrequency,
    ModulatingWave,
    ModulatorKind,
    SampledWaveform,
    SwitchingWindows,
    TruncatedCosSquared,
    carrier_phase,
    carrier_value,
    mean_modulation_order,
    modulator_value,
    solve_a_m,
    switching_windows,
    synthesize_pole_voltage,
    synthesize_three_phase,
)

__version__ = "0.1.0"
