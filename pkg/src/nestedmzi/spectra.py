"""Detector time series, periodograms, and per-mirror peak attribution.

The frequency plan puts an integer number of cycles of every tone in the
window, so a rectangular-window periodogram is leakage-free and each tone
occupies exactly one bin. Total-intensity signals appear at the doubled
frequencies 2*f_i; quad-cell signals at f_i. Attribution reads exactly one
bin per mirror and reports everything else above threshold (combination
tones f_i +/- f_j) as residual.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import beam
from .scenario import MIRRORS, Scenario, check_frequency_plan

RESIDUAL_THRESHOLD = 1e-3

DETECTORS = ("total", "quad")
MODELS = ("exact", "linearized")


@dataclass(frozen=True)
class TimeSeries:
    samples: np.ndarray
    sample_rate: float
    duration: float

    def __post_init__(self):
        object.__setattr__(
            self, "samples", np.asarray(self.samples, dtype=float)
        )
        n = int(round(self.sample_rate * self.duration))
        if len(self.samples) != n:
            raise ValueError(f"expected {n} samples, got {len(self.samples)}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("series contains NaN/Inf")

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.samples)) / self.sample_rate


@dataclass(frozen=True)
class PowerSpectrum:
    freqs: np.ndarray
    power: np.ndarray
    duration: float

    def bin_power(self, freq: float) -> float:
        k = int(round(freq * self.duration))
        if not 0 <= k < len(self.power):
            raise ValueError(f"frequency {freq} outside spectrum range")
        return float(self.power[k])


@dataclass(frozen=True)
class AttributionReport:
    mirrors: dict  # MirrorId -> {"freq": Hz, "power": value}
    residual: tuple  # ((freq, power), ...)
    detector: str
    model: str
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "mirror": {
                m: {"freq": v["freq"], "power": v["power"]}
                for m, v in self.mirrors.items()
            },
            "residual": [[f, p] for f, p in self.residual],
            "detector": self.detector,
            "model": self.model,
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def max_power(self) -> float:
        return max((v["power"] for v in self.mirrors.values()), default=0.0)

    def normalized_bars(self) -> dict:
        """Per-mirror power scaled so the largest bar is 1 (all zero if flat)."""
        top = self.max_power()
        if top <= 0.0:
            return {m: 0.0 for m in self.mirrors}
        return {m: v["power"] / top for m, v in self.mirrors.items()}


def sample_detector(
    scenario: Scenario, detector: str = "total", model: str = "exact"
) -> TimeSeries:
    """Evaluate the chosen detector at t_n = n / sample_rate (DC retained)."""
    if detector not in DETECTORS:
        raise ValueError(f"detector must be one of {DETECTORS}")
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    n = int(round(scenario.sample_rate * scenario.duration))
    out = np.empty(n)
    for i in range(n):
        t = i / scenario.sample_rate
        if model == "exact":
            field = beam.field_at(scenario, t)
            if detector == "total":
                out[i] = beam.total_intensity(field)
            else:
                out[i] = beam.quadcell_signal(field)
        else:
            i_lin, di_lin = beam.linearized_field_intensity(scenario, t)
            out[i] = i_lin if detector == "total" else di_lin
    return TimeSeries(out, scenario.sample_rate, scenario.duration)


def power_spectrum(ts: TimeSeries) -> PowerSpectrum:
    """Mean-removed rectangular-window one-sided periodogram.

    Normalized so an on-bin tone a*sin(2 pi f t) puts a^2/2 in its bin;
    the sum over bins then equals the mean square of the mean-removed
    signal (Parseval).
    """
    x = ts.samples
    n = len(x)
    if n == 0:
        raise ValueError("empty series")
    x = x - x.mean()
    spec = np.fft.rfft(x)
    power = np.abs(spec) ** 2 / n**2
    power[1:] *= 2.0
    if n % 2 == 0:
        power[-1] /= 2.0
    freqs = np.fft.rfftfreq(n, d=1.0 / ts.sample_rate)
    return PowerSpectrum(freqs=freqs, power=power, duration=ts.duration)


def attribute_peaks(
    spec: PowerSpectrum, scenario: Scenario, detector: str
) -> AttributionReport:
    """Read one bin per mirror (2 f_i for total, f_i for quad).

    Refuses to attribute when the frequency plan has collisions, since a
    colliding combination tone would be credited to the wrong mirror.
    """
    if detector not in DETECTORS:
        raise ValueError(f"detector must be one of {DETECTORS}")
    plan = check_frequency_plan(scenario)
    if not plan.ok:
        details = "; ".join(
            f"{c.tone_desc}={c.tone_freq:g} hits {c.bin_desc}={c.bin_freq:g}"
            for c in plan.collisions
        )
        raise ValueError(f"frequency plan has collisions: {details}")

    mult = 2.0 if detector == "total" else 1.0
    mirrors = {}
    attributed_bins = set()
    for m in MIRRORS:
        if scenario.vib_amplitude[m] <= 0:
            continue
        f = mult * scenario.mirror_freq[m]
        k = int(round(f * spec.duration))
        mirrors[m] = {"freq": f, "power": float(spec.power[k])}
        attributed_bins.add(k)

    top = max((v["power"] for v in mirrors.values()), default=0.0)
    threshold = RESIDUAL_THRESHOLD * top
    residual = []
    for k in range(1, len(spec.power)):
        if k in attributed_bins:
            continue
        p = float(spec.power[k])
        if p > threshold and p > 0.0:
            residual.append((float(spec.freqs[k]), p))

    note = ""
    if top <= 0.0:
        note = "all attributed powers are zero (flat spectrum)"
    return AttributionReport(
        mirrors=mirrors,
        residual=tuple(residual),
        detector=detector,
        model="",
        note=note,
    )


# -- file output ---------------------------------------------------------


def write_timeseries_csv(ts: TimeSeries, path) -> None:
    with open(path, "w") as fh:
        fh.write("t,value\n")
        for t, v in zip(ts.times, ts.samples):
            fh.write(f"{t:.17g},{v:.17g}\n")


def write_spectrum_csv(spec: PowerSpectrum, path) -> None:
    with open(path, "w") as fh:
        fh.write("freq_hz,power\n")
        for f, p in zip(spec.freqs, spec.power):
            fh.write(f"{f:.17g},{p:.17g}\n")


def write_attribution_json(report: AttributionReport, path) -> None:
    with open(path, "w") as fh:
        fh.write(report.to_json())
        fh.write("\n")


def write_bars_csv(report: AttributionReport, path) -> None:
    bars = report.normalized_bars()
    with open(path, "w") as fh:
        fh.write("mirror,attributed_power\n")
        for m in MIRRORS:
            if m in bars:
                fh.write(f"{m},{bars[m]:.17g}\n")
