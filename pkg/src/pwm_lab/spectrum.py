"""Harmonic spectra of synchronously sampled waveforms and distortion figures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import HarmonicSpectrum, nyquist_order
from .errors import ConfigurationError, DomainError, UndefinedMeasureError
from .waveform import SampledWaveform

DEFAULT_HARMONIC_LIMIT = 100
ANALYZER_HARMONIC_LIMIT = 50
DEFAULT_LOH_THRESHOLD = 0.02
CLUSTER_REL_THRESHOLD = 0.25
CLUSTER_MAX_GAP = 3
# relative to the largest component; weaker lines count as rounding noise
NEGLIGIBLE = 1e-9


def harmonic_spectrum(w: SampledWaveform, max_order: int | None = None) -> HarmonicSpectrum:
    """Peak-amplitude spectrum at integer multiples of the fundamental (FFT path).

    ``max_order`` defaults to the highest order below Nyquist.
    """
    if not isinstance(w, SampledWaveform):
        raise ConfigurationError("harmonic_spectrum needs a synchronously sampled SampledWaveform")
    limit = nyquist_order(w)
    if max_order is None:
        max_order = limit
    if max_order < 0 or max_order > limit:
        raise DomainError(f"max_order must lie in [0, {limit}], got {max_order}")
    n_samples = w.samples.size
    bins = np.fft.rfft(w.samples)[: (max_order + 1) * w.n_periods : w.n_periods] / n_samples
    amps = 2 * np.abs(bins)
    amps[0] /= 2
    phases = np.angle(bins)
    phases[0] = 0.0 if bins[0].real >= 0 else math.pi
    return HarmonicSpectrum(w.fundamental_hz, amps, phases)


def _fundamental(spec: HarmonicSpectrum) -> float:
    v1 = spec.fundamental if spec.max_order >= 1 else 0.0
    if not v1 > 0:
        raise UndefinedMeasureError("the fundamental amplitude is zero")
    return v1


def _harmonics(spec: HarmonicSpectrum, harmonic_limit: int) -> np.ndarray:
    if harmonic_limit > spec.max_order:
        raise DomainError(
            f"harmonic_limit {harmonic_limit} exceeds the spectrum's max order {spec.max_order}"
        )
    return spec.amplitudes[2 : harmonic_limit + 1]


def thd(spec: HarmonicSpectrum, harmonic_limit: int = DEFAULT_HARMONIC_LIMIT) -> float:
    """Total harmonic distortion in percent over orders 2..harmonic_limit."""
    v1 = _fundamental(spec)
    return 100.0 * math.sqrt(float(np.sum(_harmonics(spec, harmonic_limit) ** 2))) / v1


def df(spec: HarmonicSpectrum, harmonic_limit: int = DEFAULT_HARMONIC_LIMIT) -> float:
    """Distortion factor in percent: each harmonic attenuated by ``1/n**2``."""
    v1 = _fundamental(spec)
    vn = _harmonics(spec, harmonic_limit)
    n = np.arange(2, 2 + vn.size)
    return 100.0 * math.sqrt(float(np.sum((vn / n**2) ** 2))) / v1


def lowest_order_harmonic(spec: HarmonicSpectrum, threshold_pu: float = DEFAULT_LOH_THRESHOLD):
    """Smallest order n >= 2 with ``V_n >= threshold_pu * V_1``, or ``None``."""
    if not threshold_pu > 0:
        raise DomainError(f"threshold_pu must be positive, got {threshold_pu}")
    v1 = _fundamental(spec)
    hits = np.flatnonzero(spec.amplitudes[2:] >= threshold_pu * v1)
    return int(hits[0]) + 2 if hits.size else None


def central_cluster_order(
    spec: HarmonicSpectrum,
    m_bar: float,
    rel_threshold: float = CLUSTER_REL_THRESHOLD,
    max_gap: int = CLUSTER_MAX_GAP,
):
    """Amplitude-weighted centroid of the dominant carrier cluster, or ``None``.

    The cluster is seeded at the largest harmonic of order ``>= m_bar`` and
    grown to each side while amplitudes stay at or above ``rel_threshold``
    times that peak.  Runs of up to ``max_gap`` weaker orders are bridged so
    that the structurally empty even and triplen orders do not split a cluster.
    """
    amps = spec.amplitudes
    start = max(2, int(math.ceil(m_bar - 1e-9)))
    if start > spec.max_order:
        return None
    peak = start + int(np.argmax(amps[start:]))
    if not amps[peak] > NEGLIGIBLE * np.max(amps):
        return None
    floor = rel_threshold * amps[peak]

    def grow(step):
        edge, n, gap = peak, peak + step, 0
        while 2 <= n <= spec.max_order and gap <= max_gap:
            if amps[n] >= floor:
                edge, gap = n, 0
            else:
                gap += 1
            n += step
        return edge

    lo, hi = grow(-1), grow(+1)
    orders = np.arange(lo, hi + 1)
    weights = amps[lo : hi + 1]
    return float(np.sum(orders * weights) / np.sum(weights))


@dataclass(frozen=True)
class DistortionReport:
    fundamental_pu: float
    thd_percent: float
    df_percent: float
    loh_order: int | None
    central_cluster_order: float | None
    harmonic_limit: int


def distortion_report(
    spec: HarmonicSpectrum,
    m_bar: float,
    harmonic_limit: int = DEFAULT_HARMONIC_LIMIT,
    dc_link: float = 1.0,
    loh_threshold: float = DEFAULT_LOH_THRESHOLD,
) -> DistortionReport:
    return DistortionReport(
        fundamental_pu=spec.fundamental / dc_link,
        thd_percent=thd(spec, harmonic_limit),
        df_percent=df(spec, harmonic_limit),
        loh_order=lowest_order_harmonic(spec, loh_threshold),
        central_cluster_order=central_cluster_order(spec, m_bar),
        harmonic_limit=harmonic_limit,
    )
