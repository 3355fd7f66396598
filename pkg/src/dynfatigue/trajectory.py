"""Rest-to-rest quintic joint trajectories.

A segment moves from ``theta_initial`` to ``theta_end`` in ``duration``
seconds with zero velocity and acceleration at both ends. The blend is the
normalized quintic ``r(s) = 10 s^3 - 15 s^4 + 6 s^5`` with ``s = t / t_f``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dynfatigue.errors import DomainError

# Relative slack on the time bound so grid points computed as i * dt
# never trip the range check through rounding.
_TIME_SLACK = 1e-12


@dataclass(frozen=True)
class TrajectorySegment:
    theta_initial: float  # rad
    theta_end: float  # rad
    duration: float  # s

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise DomainError(f"duration must be positive, got {self.duration!r}")

    @property
    def amplitude(self) -> float:
        return self.theta_end - self.theta_initial


@dataclass(frozen=True)
class KinematicSample:
    time: float  # s
    angle: float  # rad
    velocity: float  # rad/s
    acceleration: float  # rad/s^2


def _normalized_time(t, t_f: float):
    if not t_f > 0:
        raise DomainError(f"t_f must be positive, got {t_f!r}")
    t_arr = np.asarray(t, dtype=float)
    slack = _TIME_SLACK * t_f
    if np.any(t_arr < -slack) or np.any(t_arr > t_f + slack) or np.any(np.isnan(t_arr)):
        raise DomainError(f"t must lie in [0, {t_f}], got {t!r}")
    return np.clip(t_arr / t_f, 0.0, 1.0)


def interpolation_ratio(t, t_f: float):
    """Blend fraction ``r(t)`` in [0, 1]; accepts scalars or arrays."""
    s = _normalized_time(t, t_f)
    r = s**3 * (10.0 + s * (-15.0 + 6.0 * s))
    return float(r) if r.ndim == 0 else r


def _ratio_derivatives(s, t_f: float):
    r = s**3 * (10.0 + s * (-15.0 + 6.0 * s))
    dr = 30.0 * s**2 * (1.0 - s) ** 2 / t_f
    ddr = 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / t_f**2
    return r, dr, ddr


def evaluate_arrays(segment: TrajectorySegment, t):
    """Vectorized angle, velocity and acceleration at times ``t``."""
    s = _normalized_time(t, segment.duration)
    r, dr, ddr = _ratio_derivatives(s, segment.duration)
    delta = segment.amplitude
    return segment.theta_initial + r * delta, dr * delta, ddr * delta


def evaluate(segment: TrajectorySegment, t: float) -> KinematicSample:
    angle, velocity, acceleration = evaluate_arrays(segment, t)
    return KinematicSample(float(t), float(angle), float(velocity), float(acceleration))


def polynomial_coefficients(segment: TrajectorySegment) -> np.ndarray:
    """Coefficients ``a0..a5`` of the position polynomial in raw time.

    Obtained by solving the six boundary conditions directly; used to
    cross-check the closed-form blend.
    """
    tf = segment.duration
    rows = []
    for t in (0.0, tf):
        rows.append([t**k for k in range(6)])
        rows.append([k * t ** (k - 1) if k >= 1 else 0.0 for k in range(6)])
        rows.append([k * (k - 1) * t ** (k - 2) if k >= 2 else 0.0 for k in range(6)])
    rhs = [segment.theta_initial, 0.0, 0.0, segment.theta_end, 0.0, 0.0]
    return np.linalg.solve(np.array(rows), np.array(rhs))


def make_cycle(
    theta_low: float, theta_high: float, half_period: float
) -> tuple[TrajectorySegment, TrajectorySegment]:
    """Up then down segment; both end at rest so the junction is smooth."""
    return (
        TrajectorySegment(theta_low, theta_high, half_period),
        TrajectorySegment(theta_high, theta_low, half_period),
    )


def evaluate_cycle(cycle: tuple[TrajectorySegment, TrajectorySegment], t):
    """Kinematics at times within one cycle, ``0 <= t <= 2 * half_period``."""
    up, down = cycle
    t_arr = np.asarray(t, dtype=float)
    half = up.duration
    period = half + down.duration
    if np.any(t_arr < -_TIME_SLACK * period) or np.any(t_arr > period * (1 + _TIME_SLACK)):
        raise DomainError(f"t must lie in [0, {period}]")
    t_arr = np.clip(t_arr, 0.0, period)
    in_up = t_arr <= half
    a, v, acc = evaluate_arrays(up, np.where(in_up, t_arr, 0.0))
    b, w, bcc = evaluate_arrays(down, np.where(in_up, 0.0, np.minimum(t_arr - half, down.duration)))
    angle = np.where(in_up, a, b)
    velocity = np.where(in_up, v, w)
    acceleration = np.where(in_up, acc, bcc)
    if angle.ndim == 0:
        return float(angle), float(velocity), float(acceleration)
    return angle, velocity, acceleration
