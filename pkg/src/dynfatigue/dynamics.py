"""Elbow inverse dynamics for the forearm plus a hand-held load.

Model assumptions (all single, named quantities so they can be audited):

* the forearm is a uniform solid cylinder hinged at the elbow,
  ``I_f = m_f (l_f^2 / 3 + r_f^2 / 4)``;
* the hand carries no mass; the load is a point mass gripped at the middle
  of the hand, ``d_obj = l_f + l_h / 2`` from the elbow;
* ``theta = 0`` is the forearm horizontal and flexion is positive, so the
  gravity moment goes as ``cos(theta)``.

With one degree of freedom the Lagrangian gives
``torque = I_total * theta_dd + g * cos(theta) * (m_f l_f / 2 + m_obj d_obj)``.
Positive torque is credited to the agonist (flexor) group, negative torque
to the antagonist group.
"""

from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from dynfatigue.anthropometry import BodyParams
from dynfatigue.errors import ConfigurationError, DomainError
from dynfatigue.trajectory import KinematicSample, evaluate_cycle, make_cycle

DEFAULT_GRAVITY = 9.81  # m/s^2
DEFAULT_TIME_STEP = 1e-3  # s

TORQUE_CSV_HEADER = ("time_s", "angle_rad", "velocity_rad_s", "acceleration_rad_s2", "torque_Nm")

# Tolerance for half_period being a whole number of time steps.
_GRID_TOLERANCE = 1e-9


def load_distance(body: BodyParams) -> float:
    """Elbow-to-load distance: grip at the middle of the hand."""
    return body.forearm_length + body.hand_length / 2.0


@dataclass(frozen=True)
class MotionSpec:
    body: BodyParams
    load_mass: float  # kg
    theta_low: float  # rad
    theta_high: float  # rad
    half_period: float  # s
    time_step: float = DEFAULT_TIME_STEP  # s
    gravity: float = DEFAULT_GRAVITY  # m/s^2

    def __post_init__(self) -> None:
        for name in ("load_mass", "theta_low", "theta_high", "half_period", "time_step", "gravity"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigurationError(f"{name} must be finite, got {value!r}")
        if self.load_mass < 0:
            raise ConfigurationError(f"load_mass must be >= 0, got {self.load_mass}")
        if not self.gravity > 0:
            raise ConfigurationError(f"gravity must be > 0, got {self.gravity}")
        if not self.half_period > 0:
            raise ConfigurationError(f"half_period must be > 0, got {self.half_period}")
        if not 0 < self.time_step <= self.half_period / 100:
            raise ConfigurationError(
                f"time_step must be in (0, half_period/100], got {self.time_step} "
                f"for half_period {self.half_period}"
            )
        steps = self.half_period / self.time_step
        if abs(steps - round(steps)) > _GRID_TOLERANCE * steps:
            raise ConfigurationError(
                f"half_period {self.half_period} is not a whole number of time steps {self.time_step}"
            )

    @property
    def cycle_period(self) -> float:
        return 2.0 * self.half_period

    @property
    def steps_per_half(self) -> int:
        return round(self.half_period / self.time_step)

    @property
    def load_distance(self) -> float:
        return load_distance(self.body)

    @property
    def inertia(self) -> float:
        """Moment of inertia of forearm plus load about the elbow (kg m^2)."""
        b = self.body
        forearm = b.forearm_mass * (b.forearm_length**2 / 3.0 + b.forearm_radius**2 / 4.0)
        return forearm + self.load_mass * self.load_distance**2

    @property
    def static_moment(self) -> float:
        """Gravity moment with the forearm horizontal (N m)."""
        b = self.body
        return self.gravity * (
            b.forearm_mass * b.forearm_length / 2.0 + self.load_mass * self.load_distance
        )

    def cycle(self):
        return make_cycle(self.theta_low, self.theta_high, self.half_period)


def energies(spec: MotionSpec, angle, velocity):
    """Kinetic and potential energy split into joint and object parts.

    Returns ``(E_joint, E_object, U_joint, U_object)`` in joules, with the
    potential measured from the elbow height.
    """
    b = spec.body
    forearm_inertia = b.forearm_mass * (b.forearm_length**2 / 3.0 + b.forearm_radius**2 / 4.0)
    d = spec.load_distance
    e_joint = 0.5 * forearm_inertia * velocity**2
    e_object = 0.5 * spec.load_mass * (d * velocity) ** 2
    u_joint = b.forearm_mass * spec.gravity * (b.forearm_length / 2.0) * np.sin(angle)
    u_object = spec.load_mass * spec.gravity * d * np.sin(angle)
    return e_joint, e_object, u_joint, u_object


def lagrangian(spec: MotionSpec, angle, velocity):
    e_joint, e_object, u_joint, u_object = energies(spec, angle, velocity)
    return (e_joint + e_object) - (u_joint + u_object)


def _torque(spec: MotionSpec, angle, acceleration):
    return spec.inertia * acceleration + spec.static_moment * np.cos(angle)


def joint_torque(spec: MotionSpec, sample: KinematicSample) -> float:
    return float(_torque(spec, sample.angle, sample.acceleration))


def torque_at(spec: MotionSpec, t):
    """Torque at any time ``t >= 0`` (s) of a motion repeating the cycle."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("time must be nonnegative")
    phase = np.mod(t_arr, spec.cycle_period)
    angle, _, acceleration = evaluate_cycle(spec.cycle(), phase)
    out = _torque(spec, angle, acceleration)
    return float(out) if np.ndim(out) == 0 else out


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TorqueProfile:
    """One closed cycle sampled on a uniform grid (arrays are read-only)."""

    time: np.ndarray
    angle: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray
    torque: np.ndarray
    cycle_period: float
    time_step: float = field(default=0.0)

    def __post_init__(self) -> None:
        for name in ("time", "angle", "velocity", "acceleration", "torque"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        if len(self.time) == 0:
            raise ValueError("profile must contain at least one sample")

    def __len__(self) -> int:
        return len(self.time)

    def rows(self):
        return zip(self.time, self.angle, self.velocity, self.acceleration, self.torque)

    def to_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(TORQUE_CSV_HEADER)
        for row in self.rows():
            writer.writerow([repr(float(v)) for v in row])


@functools.lru_cache(maxsize=64)
def torque_profile(spec: MotionSpec) -> TorqueProfile:
    if not isinstance(spec, MotionSpec):
        raise ConfigurationError(f"expected MotionSpec, got {type(spec).__name__}")
    n = 2 * spec.steps_per_half
    time = np.arange(n + 1) * (spec.cycle_period / n)
    angle, velocity, acceleration = evaluate_cycle(spec.cycle(), time)
    # Pin the closing sample exactly onto the starting pose.
    angle[-1] = spec.theta_low
    velocity[-1] = 0.0
    acceleration[-1] = 0.0
    return TorqueProfile(
        time=time,
        angle=angle,
        velocity=velocity,
        acceleration=acceleration,
        torque=_torque(spec, angle, acceleration),
        cycle_period=spec.cycle_period,
        time_step=spec.cycle_period / n,
    )


@dataclass(frozen=True)
class MomentumSplit:
    agonist: float  # N m s, integral of positive torque
    antagonist: float  # N m s, integral of the magnitude of negative torque

    @property
    def net(self) -> float:
        return self.agonist - self.antagonist

    def scaled(self, factor: float) -> "MomentumSplit":
        return MomentumSplit(self.agonist * factor, self.antagonist * factor)

    def __add__(self, other: "MomentumSplit") -> "MomentumSplit":
        return MomentumSplit(self.agonist + other.agonist, self.antagonist + other.antagonist)


def split_interval_areas(time, torque):
    """Positive and negative trapezoid areas for every grid interval.

    Inside an interval where the torque changes sign the zero crossing is
    located by linear interpolation, so each part is a triangle rather than
    a clipped trapezoid. The two parts always sum to the plain trapezoid.
    """
    t = np.asarray(time, dtype=float)
    g = np.asarray(torque, dtype=float)
    dt = np.diff(t)
    g0, g1 = g[:-1], g[1:]
    pos0, pos1 = np.maximum(g0, 0.0), np.maximum(g1, 0.0)
    neg0, neg1 = np.maximum(-g0, 0.0), np.maximum(-g1, 0.0)
    positive = 0.5 * (pos0 + pos1) * dt
    negative = 0.5 * (neg0 + neg1) * dt

    crossing = (g0 * g1) < 0
    if np.any(crossing):
        a, b, h = g0[crossing], g1[crossing], dt[crossing]
        frac = a / (a - b)  # fraction of the interval before the crossing
        first = 0.5 * np.abs(a) * frac * h
        second = 0.5 * np.abs(b) * (1.0 - frac) * h
        positive[crossing] = np.where(a > 0, first, second)
        negative[crossing] = np.where(a > 0, second, first)
    return positive, negative


def momentum_split(profile: TorqueProfile) -> MomentumSplit:
    positive, negative = split_interval_areas(profile.time, profile.torque)
    return MomentumSplit(float(positive.sum()), float(negative.sum()))


def cumulative_split(profile: TorqueProfile) -> tuple[np.ndarray, np.ndarray]:
    """Running agonist and antagonist momentum at every sample (N m s)."""
    positive, negative = split_interval_areas(profile.time, profile.torque)
    agonist = np.concatenate(([0.0], np.cumsum(positive)))
    antagonist = np.concatenate(([0.0], np.cumsum(negative)))
    return agonist, antagonist


def _partial_cycle(spec: MotionSpec, profile: TorqueProfile, remainder: float) -> MomentumSplit:
    if remainder <= 0:
        return MomentumSplit(0.0, 0.0)
    idx = int(np.searchsorted(profile.time, remainder, side="right"))
    time = profile.time[:idx]
    torque = profile.torque[:idx]
    if time[-1] < remainder:
        time = np.append(time, remainder)
        torque = np.append(torque, torque_at(spec, remainder))
    positive, negative = split_interval_areas(time, torque)
    return MomentumSplit(float(positive.sum()), float(negative.sum()))


def cumulative_momentum(spec: MotionSpec, duration: float) -> MomentumSplit:
    """Sign-split momentum accumulated over ``duration`` seconds of repetition."""
    if not duration >= 0 or not math.isfinite(duration):
        raise DomainError(f"duration must be a finite nonnegative number, got {duration!r}")
    profile = torque_profile(spec)
    per_cycle = momentum_split(profile)
    cycles = math.floor(duration / spec.cycle_period)
    remainder = duration - cycles * spec.cycle_period
    # Snap remainders within rounding of a full cycle.
    if remainder > spec.cycle_period * (1 - 1e-12):
        cycles += 1
        remainder = 0.0
    elif remainder < spec.cycle_period * 1e-12:
        remainder = 0.0
    return per_cycle.scaled(cycles) + _partial_cycle(spec, profile, remainder)
