"""Experiment configuration: canonical cases and frequency-plan checking.

The nested interferometer has five vibrating mirrors: A and B inside the
inner loop, E and F routing light into and out of it, and C on the free
arm. A Scenario fixes the interferometer phase, whether arm C is open,
the vibration amplitudes/frequencies, and the sampling window.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

MIRRORS = ("A", "B", "C", "E", "F")

DEFAULT_FREQS = {"A": 31.0, "B": 37.0, "C": 41.0, "E": 47.0, "F": 59.0}

_CASE_PHI_KAPPA = {
    "a": (math.pi, 1.0),
    "b": (0.0, 1.0),
    "c": (0.0, 0.0),
}

_FREQ_TOL = 1e-9


@dataclass(frozen=True)
class Scenario:
    """Full experiment configuration. Immutable after construction."""

    phi: float
    kappa: float
    epsilon: float = 0.01
    mirror_freq: dict = field(default_factory=lambda: dict(DEFAULT_FREQS))
    vib_amplitude: dict = None
    duration: float = 1.0
    sample_rate: float = 1024.0
    series_order: int = 4

    def __post_init__(self):
        if self.vib_amplitude is None:
            object.__setattr__(
                self, "vib_amplitude", {m: self.epsilon for m in MIRRORS}
            )
        self._validate()

    def _validate(self):
        if not (0.0 < self.epsilon < 0.1):
            raise ValueError(f"epsilon must lie in (0, 0.1), got {self.epsilon}")
        if self.kappa not in (0.0, 1.0):
            raise ValueError(f"kappa must be 0 or 1, got {self.kappa}")
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.series_order < 3:
            raise ValueError("series_order must be >= 3")
        if set(self.mirror_freq) != set(MIRRORS):
            raise ValueError("mirror_freq must map exactly the five mirrors A,B,C,E,F")
        if set(self.vib_amplitude) != set(MIRRORS):
            raise ValueError("vib_amplitude must map exactly the five mirrors A,B,C,E,F")
        for m in MIRRORS:
            f = self.mirror_freq[m]
            if f <= 0:
                raise ValueError(f"mirror_freq[{m}] must be positive")
            cycles = f * self.duration
            if abs(cycles - round(cycles)) > _FREQ_TOL or round(cycles) < 1:
                raise ValueError(
                    f"mirror_freq[{m}]={f} is not an integer number of cycles "
                    f"per window T={self.duration}"
                )
            if self.vib_amplitude[m] < 0:
                raise ValueError(f"vib_amplitude[{m}] must be >= 0")
        freqs = [self.mirror_freq[m] for m in MIRRORS]
        top = max(
            max(2.0 * f for f in freqs),
            max(fi + fj for fi in freqs for fj in freqs if fi is not fj),
        )
        if self.sample_rate <= 4.0 * top:
            raise ValueError(
                f"sample_rate {self.sample_rate} too low; need > {4.0 * top}"
            )

    # -- JSON round trip -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "phi": self.phi,
            "kappa": self.kappa,
            "epsilon": self.epsilon,
            "mirror_freq": {m: self.mirror_freq[m] for m in MIRRORS},
            "vib_amplitude": {m: self.vib_amplitude[m] for m in MIRRORS},
            "duration": self.duration,
            "sample_rate": self.sample_rate,
            "series_order": self.series_order,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        known = {
            "phi",
            "kappa",
            "epsilon",
            "mirror_freq",
            "vib_amplitude",
            "duration",
            "sample_rate",
            "series_order",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key in ("mirror_freq", "vib_amplitude"):
            if key in kwargs and kwargs[key] is not None:
                kwargs[key] = {m: float(v) for m, v in kwargs[key].items()}
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        return cls.from_dict(json.loads(text))

    def with_overrides(self, **kwargs) -> "Scenario":
        return replace(self, **kwargs)


def standard_case(case_id: str) -> Scenario:
    """Canonical configurations: (a) phi=pi arm C open, (b) phi=0 arm C
    open, (c) phi=0 arm C blocked."""
    if case_id not in _CASE_PHI_KAPPA:
        raise ValueError(f"unknown case {case_id!r}; expected one of a, b, c")
    phi, kappa = _CASE_PHI_KAPPA[case_id]
    return Scenario(phi=phi, kappa=kappa)


@dataclass(frozen=True)
class Collision:
    tone_desc: str
    tone_freq: float
    bin_desc: str
    bin_freq: float


@dataclass(frozen=True)
class CollisionReport:
    fundamentals: tuple
    doubles: tuple
    sums: tuple
    diffs: tuple
    collisions: tuple

    @property
    def ok(self) -> bool:
        return len(self.collisions) == 0


def _close(x: float, y: float) -> bool:
    return abs(x - y) < _FREQ_TOL


def check_frequency_plan(scenario: Scenario) -> CollisionReport:
    """Catalog every tone the detectors can produce and flag collisions.

    Total-intensity spectra live at doubled frequencies 2*f_i and at
    combination tones f_i +/- f_j; quad-cell spectra live at the f_i
    themselves. Attribution reads exactly one bin per mirror, so a plan is
    safe only if no combination tone (and no other mirror's tone) lands on
    an attribution bin. Mirrors with zero vibration amplitude carry no
    tone and are ignored.
    """
    active = [m for m in MIRRORS if scenario.vib_amplitude[m] > 0]
    freqs = {m: scenario.mirror_freq[m] for m in active}
    fundamentals = tuple(sorted(freqs.values()))
    doubles = tuple(sorted(2.0 * f for f in freqs.values()))
    pairs = [(m, n) for i, m in enumerate(active) for n in active[i + 1 :]]
    sums = tuple(sorted(freqs[m] + freqs[n] for m, n in pairs))
    diffs = tuple(sorted(abs(freqs[m] - freqs[n]) for m, n in pairs))

    # Attribution bins: f_m (quad detector) and 2 f_m (total detector).
    bins = [(f"f_{m}", freqs[m]) for m in active]
    bins += [(f"2f_{m}", 2.0 * freqs[m]) for m in active]

    collisions = []

    def hit(tone_desc, tone_freq):
        for bin_desc, bin_freq in bins:
            if bin_desc == tone_desc:
                continue
            if _close(tone_freq, bin_freq):
                collisions.append(Collision(tone_desc, tone_freq, bin_desc, bin_freq))

    for m, n in pairs:
        hit(f"f_{m}+f_{n}", freqs[m] + freqs[n])
        hit(f"f_{m}-f_{n}", abs(freqs[m] - freqs[n]))
    for m in active:
        hit(f"f_{m}", freqs[m])
        hit(f"2f_{m}", 2.0 * freqs[m])

    return CollisionReport(
        fundamentals=fundamentals,
        doubles=doubles,
        sums=sums,
        diffs=diffs,
        collisions=tuple(collisions),
    )
