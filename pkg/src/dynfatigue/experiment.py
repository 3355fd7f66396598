"""Push/pull case study: measurements in, per-row fatigue rates out.

Push measurements probe the agonist (flexor) group and pull measurements the
antagonist group. Each row after the rested baseline yields one rate per
channel from the momentum that channel accumulated up to that row's time.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from dynfatigue.anthropometry import Subject, derive_body_params
from dynfatigue.dynamics import MomentumSplit, MotionSpec, cumulative_momentum
from dynfatigue.errors import EstimationError, MeasurementParseError
from dynfatigue.fatigue import (
    CapacityCurve,
    FatigueParams,
    WarmUpWarning,
    capacity_closed_form,
    estimate_k,
    fit_k_least_squares,
)

MEASUREMENT_HEADER = ("time_min", "push_Nm", "pull_Nm")
CHANNELS = ("agonist", "antagonist")
_CHANNEL_COLUMN = {"agonist": "push", "antagonist": "pull"}

SECONDS_PER_MINUTE = 60.0

PAPER_SUBJECT = Subject(height=1.88, mass=80.0)
PAPER_BAR_MASS = 3.0  # kg
PAPER_THETA_HIGH_DEG = 75.0
PAPER_HALF_PERIOD = 1.0  # s


def default_motion_spec() -> MotionSpec:
    """The bundled protocol: 1.88 m / 80 kg subject, 3 kg bar, 0 to 75 deg, 2 s cycle."""
    return MotionSpec(
        body=derive_body_params(PAPER_SUBJECT),
        load_mass=PAPER_BAR_MASS,
        theta_low=0.0,
        theta_high=math.radians(PAPER_THETA_HIGH_DEG),
        half_period=PAPER_HALF_PERIOD,
    )


@dataclass(frozen=True)
class MeasurementSet:
    time: tuple[float, ...]  # min
    push: tuple[float, ...]  # N m
    pull: tuple[float, ...]  # N m

    def __post_init__(self) -> None:
        n = len(self.time)
        if n == 0 or len(self.push) != n or len(self.pull) != n:
            raise ValueError("measurement columns must be non-empty and equally long")
        if self.time[0] != 0:
            raise ValueError("the first measurement must be at time 0")
        for a, b in zip(self.time, self.time[1:]):
            if not b > a:
                raise ValueError("measurement times must be strictly increasing")
        if any(not v > 0 for v in self.push + self.pull):
            raise ValueError("measured torques must be positive")

    def __len__(self) -> int:
        return len(self.time)

    def channel(self, name: str) -> tuple[float, ...]:
        return getattr(self, _CHANNEL_COLUMN[_check_channel(name)])

    def mvc(self, name: str) -> float:
        return self.channel(name)[0]


def _check_channel(name: str) -> str:
    if name not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {name!r}")
    return name


def _parse_float(text: str, line: int, column: str, source: str | None) -> float:
    try:
        value = float(text)
    except ValueError:
        raise MeasurementParseError(f"{column}: not a number: {text!r}", line, source) from None
    if not math.isfinite(value):
        raise MeasurementParseError(f"{column}: not finite: {text!r}", line, source)
    return value


def load_measurements(source: TextIO | str | Path, name: str | None = None) -> MeasurementSet:
    """Parse a ``time_min,push_Nm,pull_Nm`` CSV from a stream or a path."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            with path.open(newline="", encoding="utf-8") as fh:
                return load_measurements(fh, name=str(path))
        except OSError as exc:
            raise MeasurementParseError(f"cannot read file: {exc.strerror}", None, str(path)) from None

    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise MeasurementParseError("empty file", 1, name)
    if tuple(h.strip() for h in header) != MEASUREMENT_HEADER:
        raise MeasurementParseError(
            f"expected header {','.join(MEASUREMENT_HEADER)}, got {','.join(header)}", 1, name
        )

    times: list[float] = []
    push: list[float] = []
    pull: list[float] = []
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise MeasurementParseError(f"expected 3 fields, got {len(row)}", line, name)
        t, p, q = (
            _parse_float(cell.strip(), line, col, name) for cell, col in zip(row, MEASUREMENT_HEADER)
        )
        if not times and t != 0:
            raise MeasurementParseError("first data row must be at time 0", line, name)
        if times and not t > times[-1]:
            raise MeasurementParseError(
                f"time {t} does not increase after {times[-1]}", line, name
            )
        if not (p > 0 and q > 0):
            raise MeasurementParseError("torques must be positive", line, name)
        times.append(t)
        push.append(p)
        pull.append(q)

    if not times:
        raise MeasurementParseError("no data rows", reader.line_num, name)
    return MeasurementSet(tuple(times), tuple(push), tuple(pull))


def bundled_table2() -> MeasurementSet:
    text = resources.files("dynfatigue").joinpath("data/table2.csv").read_text(encoding="utf-8")
    return load_measurements(io.StringIO(text), name="table2.csv")


def momentum_minutes(spec: MotionSpec, minutes: float) -> MomentumSplit:
    """Cumulative sign-split momentum after ``minutes`` of work, in N m min."""
    split = cumulative_momentum(spec, minutes * SECONDS_PER_MINUTE)
    return split.scaled(1.0 / SECONDS_PER_MINUTE)


def _channel_momentum(split: MomentumSplit, channel: str) -> float:
    return split.agonist if channel == "agonist" else split.antagonist


def spec_to_dict(spec: MotionSpec) -> dict:
    b = spec.body
    return {
        "forearm_length_m": b.forearm_length,
        "forearm_radius_m": b.forearm_radius,
        "hand_length_m": b.hand_length,
        "forearm_mass_kg": b.forearm_mass,
        "load_mass_kg": spec.load_mass,
        "load_distance_m": spec.load_distance,
        "theta_low_rad": spec.theta_low,
        "theta_high_rad": spec.theta_high,
        "half_period_s": spec.half_period,
        "time_step_s": spec.time_step,
        "gravity_m_s2": spec.gravity,
    }


@dataclass(frozen=True)
class Summary:
    min: float
    mean: float
    max: float

    def as_dict(self) -> dict:
        return {"min": self.min, "mean": self.mean, "max": self.max}


@dataclass(frozen=True)
class EstimationReport:
    """Per-row rates for both channels plus summaries.

    ``k_agonist[i]`` belongs to measurement row ``i + 1``. A rate is ``None``
    when the channel accumulated no momentum by that time. ``flags`` lists
    warm-up and non-estimable rows; flagged rows are left out of the
    min/mean/max summaries but kept in the per-row lists.
    """

    times: tuple[float, ...]
    k_agonist: tuple[float | None, ...]
    k_antagonist: tuple[float | None, ...]
    summary: dict[str, Summary | None]
    least_squares: dict[str, float | None]
    flags: tuple[dict, ...]
    mvc: dict[str, float]
    spec: MotionSpec = field(compare=False)

    def rates(self, channel: str) -> tuple[float | None, ...]:
        return self.k_agonist if _check_channel(channel) == "agonist" else self.k_antagonist

    def to_dict(self) -> dict:
        summary = {}
        for channel in CHANNELS:
            s = self.summary[channel]
            entry = s.as_dict() if s is not None else None
            if entry is not None:
                entry["least_squares"] = self.least_squares[channel]
            summary[channel] = entry
        return {
            "k_agonist": list(self.k_agonist),
            "k_antagonist": list(self.k_antagonist),
            "summary": summary,
            "flags": [dict(f) for f in self.flags],
            "spec": spec_to_dict(self.spec),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"


def _summarize(values: Iterable[float]) -> Summary | None:
    vals = list(values)
    if not vals:
        return None
    return Summary(min(vals), math.fsum(vals) / len(vals), max(vals))


def run_estimation(measurements: MeasurementSet, spec: MotionSpec) -> EstimationReport:
    rates: dict[str, list[float | None]] = {c: [] for c in CHANNELS}
    usable: dict[str, list[float]] = {c: [] for c in CHANNELS}
    lsq_rows: dict[str, tuple[list[float], list[float]]] = {c: ([], []) for c in CHANNELS}
    flags: list[dict] = []

    for row in range(1, len(measurements)):
        t = measurements.time[row]
        split = momentum_minutes(spec, t)
        for channel in CHANNELS:
            mvc = measurements.mvc(channel)
            measured = measurements.channel(channel)[row]
            momentum = _channel_momentum(split, channel)
            if momentum <= 0:
                rates[channel].append(None)
                flags.append({"row": row, "time_min": t, "channel": channel, "reason": "non_estimable"})
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", WarmUpWarning)
                k = estimate_k(mvc, measured, momentum)
            rates[channel].append(k)
            lsq_rows[channel][0].append(measured)
            lsq_rows[channel][1].append(momentum)
            if measured > mvc:
                flags.append({"row": row, "time_min": t, "channel": channel, "reason": "warm_up"})
            else:
                usable[channel].append(k)

    least_squares: dict[str, float | None] = {}
    for channel in CHANNELS:
        cems, moms = lsq_rows[channel]
        least_squares[channel] = (
            fit_k_least_squares(measurements.mvc(channel), cems, moms) if cems else None
        )

    return EstimationReport(
        times=measurements.time[1:],
        k_agonist=tuple(rates["agonist"]),
        k_antagonist=tuple(rates["antagonist"]),
        summary={c: _summarize(usable[c]) for c in CHANNELS},
        least_squares=least_squares,
        flags=tuple(flags),
        mvc={c: measurements.mvc(c) for c in CHANNELS},
        spec=spec,
    )


@dataclass(frozen=True)
class Envelope:
    minimum: CapacityCurve  # driven by the smallest k: highest curve
    average: CapacityCurve
    maximum: CapacityCurve  # driven by the largest k: lowest curve
    rates: Summary

    def __iter__(self):
        return iter((self.minimum, self.average, self.maximum))


def prediction_envelope(
    report: EstimationReport,
    channel: str,
    horizon: float,
    times: Iterable[float] | None = None,
    points: int = 301,
) -> Envelope:
    """Capacity curves for the min, mean and max rate of ``channel``.

    Curves are sampled at ``times`` (minutes) if given, otherwise at
    ``points`` evenly spaced times on ``[0, horizon]``.
    """
    _check_channel(channel)
    rates = report.summary[channel]
    if rates is None:
        raise EstimationError(f"no estimable rate for the {channel} channel")
    if not horizon >= 0:
        raise ValueError(f"horizon must be nonnegative, got {horizon!r}")
    if times is None:
        grid = np.array([0.0]) if horizon == 0 else np.linspace(0.0, horizon, points)
    else:
        grid = np.asarray(list(times), dtype=float)
    momenta = np.array([_channel_momentum(momentum_minutes(report.spec, t), channel) for t in grid])
    mvc = report.mvc[channel]

    def curve(k: float) -> CapacityCurve:
        return CapacityCurve(grid, capacity_closed_form(FatigueParams(mvc, k), momenta))

    return Envelope(curve(rates.min), curve(rates.mean), curve(rates.max), rates)
