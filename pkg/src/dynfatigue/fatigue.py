"""Residual torque capacity under accumulated joint effort.

Capacity decays as ``dC/dt = -k * (C / mvc) * torque(t)`` from ``C(0) = mvc``,
which integrates to ``C(t) = mvc * exp(-(k / mvc) * M(t))`` with ``M`` the
running torque integral (the joint momentum). Times are in minutes, ``k`` in
1/min and momentum in N m min throughout this module.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence, TextIO

import numpy as np

from dynfatigue.errors import DomainError, EstimationError

CAPACITY_CSV_HEADER = ("time_min", "cem_torque_Nm")


def _log_ratio(c, mvc):
    """ln(c / mvc), taking log1p near 1 where the quotient loses digits."""
    c = np.asarray(c, dtype=float)
    ratio = c / mvc
    near_one = ratio > 0.5
    far = np.log(np.where(near_one, 1.0, ratio))
    near = np.log1p(np.where(near_one, (c - mvc) / mvc, 0.0))
    out = np.where(near_one, near, far)
    return float(out) if out.ndim == 0 else out


class WarmUpWarning(UserWarning):
    """Measured capacity exceeds the rested maximum; the rate was clamped to zero."""


@dataclass(frozen=True)
class FatigueParams:
    mvc_torque: float  # N m
    fatigue_rate: float  # 1/min

    def __post_init__(self) -> None:
        if not (self.mvc_torque > 0 and math.isfinite(self.mvc_torque)):
            raise DomainError(f"mvc_torque must be positive, got {self.mvc_torque!r}")
        if not (self.fatigue_rate >= 0 and math.isfinite(self.fatigue_rate)):
            raise DomainError(f"fatigue_rate must be nonnegative, got {self.fatigue_rate!r}")


@dataclass(frozen=True, eq=False)
class CapacityCurve:
    time: np.ndarray  # min
    cem_torque: np.ndarray  # N m

    def __post_init__(self) -> None:
        for name in ("time", "cem_torque"):
            a = np.ascontiguousarray(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    def __len__(self) -> int:
        return len(self.time)

    def to_csv(self, stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CAPACITY_CSV_HEADER)
        for t, c in zip(self.time, self.cem_torque):
            writer.writerow([repr(float(t)), repr(float(c))])


def capacity_closed_form(params: FatigueParams, momentum):
    """Remaining capacity after ``momentum`` N m min of effort.

    Accepts a scalar or an array of momenta.
    """
    m = np.asarray(momentum, dtype=float)
    if np.any(m < 0) or np.any(np.isnan(m)):
        raise DomainError("momentum must be nonnegative")
    out = params.mvc_torque * np.exp(-(params.fatigue_rate / params.mvc_torque) * m)
    return float(out) if out.ndim == 0 else out


def _rk4_step(f, t: float, y: float, h: float) -> float:
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def capacity_ode(
    params: FatigueParams,
    torque_fn: Callable[[float], float],
    t_end: float,
    step: float,
) -> CapacityCurve:
    """Integrate the capacity ODE with classical fixed-step RK4.

    ``torque_fn`` maps time in minutes to the driving torque in N m. The last
    step is shortened so the curve ends exactly at ``t_end``.
    """
    if not step > 0:
        raise DomainError(f"step must be positive, got {step!r}")
    if not t_end >= 0:
        raise DomainError(f"t_end must be nonnegative, got {t_end!r}")
    rate = params.fatigue_rate / params.mvc_torque

    def rhs(t: float, c: float) -> float:
        return -rate * c * torque_fn(t)

    n_full = int(math.floor(t_end / step + 1e-9))
    times = [i * step for i in range(n_full + 1)]
    if t_end - times[-1] > 1e-12 * max(1.0, t_end):
        times.append(t_end)
    else:
        times[-1] = t_end

    values = [params.mvc_torque]
    for t0, t1 in zip(times[:-1], times[1:]):
        values.append(_rk4_step(rhs, t0, values[-1], t1 - t0))
    return CapacityCurve(np.array(times), np.array(values))


def estimate_k(mvc: float, cem_measured: float, momentum: float) -> float:
    """Fatigue rate (1/min) that maps ``mvc`` to ``cem_measured`` after ``momentum``.

    This is the exact inverse of :func:`capacity_closed_form`. A measurement
    above ``mvc`` (muscles warming up) gives ``k = 0`` and a
    :class:`WarmUpWarning`.
    """
    if not mvc > 0:
        raise DomainError(f"mvc must be positive, got {mvc!r}")
    if not cem_measured > 0:
        raise DomainError(f"measured torque must be positive, got {cem_measured!r}")
    if momentum < 0:
        raise DomainError(f"momentum must be nonnegative, got {momentum!r}")
    if momentum == 0:
        raise EstimationError("momentum is zero; the fatigue rate is undetermined")
    if cem_measured > mvc:
        warnings.warn(
            f"measured torque {cem_measured} exceeds mvc {mvc}; fatigue rate clamped to 0",
            WarmUpWarning,
            stacklevel=2,
        )
        return 0.0
    return -_log_ratio(cem_measured, mvc) * mvc / momentum


def fit_k_least_squares(mvc: float, cem_measured: Sequence[float], momenta: Sequence[float]) -> float:
    """Single rate fitted to all rows by least squares on log capacity.

    Solves ``min_k sum((-ln(c_i / mvc) - k * M_i / mvc)^2)``, a regression
    through the origin, and clamps the result at zero.
    """
    c = np.asarray(cem_measured, dtype=float)
    m = np.asarray(momenta, dtype=float)
    if c.shape != m.shape or c.size == 0:
        raise EstimationError("need equally sized, non-empty measurement and momentum arrays")
    if np.any(c <= 0) or np.any(m < 0):
        raise DomainError("measured torques must be positive and momenta nonnegative")
    x = m / mvc
    y = -_log_ratio(c, mvc)
    denom = float(np.dot(x, x))
    if denom == 0:
        raise EstimationError("all momenta are zero; the fatigue rate is undetermined")
    return max(0.0, float(np.dot(x, y)) / denom)
