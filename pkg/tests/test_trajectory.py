import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynfatigue.errors import DomainError
from dynfatigue.trajectory import (
    TrajectorySegment,
    evaluate,
    evaluate_arrays,
    evaluate_cycle,
    interpolation_ratio,
    make_cycle,
    polynomial_coefficients,
)

PAPER_RANGE = 5 * math.pi / 12


def test_ratio_boundaries_and_midpoint():
    assert interpolation_ratio(0.0, 2.0) == 0.0
    assert interpolation_ratio(2.0, 2.0) == 1.0
    assert interpolation_ratio(1.0, 2.0) == 0.5


def test_ratio_quarter():
    # 10/64 - 15/256 + 6/1024
    assert interpolation_ratio(0.25, 1.0) == pytest.approx(0.103515625, abs=1e-15)


@pytest.mark.parametrize("t", [-0.1, 1.1, float("nan")])
def test_ratio_out_of_range(t):
    with pytest.raises(DomainError):
        interpolation_ratio(t, 1.0)


def test_non_positive_duration():
    with pytest.raises(DomainError):
        TrajectorySegment(0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        interpolation_ratio(0.0, -1.0)


def test_paper_segment_midpoint():
    seg = TrajectorySegment(0.0, PAPER_RANGE, 1.0)
    s = evaluate(seg, 0.5)
    assert s.angle == pytest.approx(5 * math.pi / 24, rel=1e-15)
    assert s.acceleration == pytest.approx(0.0, abs=1e-14)
    assert s.velocity == pytest.approx(15 / 8 * PAPER_RANGE, rel=1e-14)
    assert s.velocity == pytest.approx(2.4544, abs=5e-5)


def test_start_at_rest():
    seg = TrajectorySegment(0.3, 1.2, 0.7)
    s = evaluate(seg, 0.0)
    assert (s.angle, s.velocity, s.acceleration) == (0.3, 0.0, 0.0)


def test_out_of_range_evaluate():
    with pytest.raises(DomainError):
        evaluate(TrajectorySegment(0.0, 1.0, 1.0), 1.5)


def test_solved_boundary_system_matches_closed_form():
    seg = TrajectorySegment(0.2, 0.2 + PAPER_RANGE, 1.3)
    a = polynomial_coefficients(seg)
    d, tf = seg.amplitude, seg.duration
    expected = [0.2, 0.0, 0.0, 10 * d / tf**3, -15 * d / tf**4, 6 * d / tf**5]
    np.testing.assert_allclose(a, expected, rtol=1e-9, atol=1e-12)
    t = np.linspace(0, tf, 57)
    angle, _, _ = evaluate_arrays(seg, t)
    np.testing.assert_allclose(np.polyval(a[::-1], t), angle, rtol=1e-10, atol=1e-12)


def test_make_cycle_paper():
    up, down = make_cycle(0.0, PAPER_RANGE, 1.0)
    assert (up.theta_initial, up.theta_end, up.duration) == (0.0, PAPER_RANGE, 1.0)
    assert (down.theta_initial, down.theta_end, down.duration) == (PAPER_RANGE, 0.0, 1.0)


def test_degenerate_cycle_is_constant():
    cycle = make_cycle(0.0, 0.0, 1.0)
    angle, vel, acc = evaluate_cycle(cycle, np.linspace(0, 2, 41))
    assert np.all(angle == 0) and np.all(vel == 0) and np.all(acc == 0)


def test_cycle_junction_is_smooth():
    cycle = make_cycle(0.0, PAPER_RANGE, 1.0)
    _, v, a = evaluate_cycle(cycle, np.array([1.0 - 1e-9, 1.0, 1.0 + 1e-9]))
    assert np.all(np.abs(v) < 1e-12)
    assert np.all(np.abs(a) < 1e-6)


def test_cycle_time_reversal():
    cycle = make_cycle(0.1, PAPER_RANGE, 1.0)
    t = np.linspace(0, 2, 201)
    a1, _, _ = evaluate_cycle(cycle, t)
    a2, _, _ = evaluate_cycle(cycle, 2.0 - t)
    np.testing.assert_allclose(a1, a2, rtol=0, atol=1e-14)


angles = st.floats(min_value=-3.0, max_value=3.0)
durations = st.floats(min_value=1e-2, max_value=100.0)


@given(th0=angles, th1=angles, tf=durations)
def test_boundary_exactness(th0, th1, tf):
    seg = TrajectorySegment(th0, th1, tf)
    for t in (0.0, tf):
        s = evaluate(seg, t)
        assert abs(s.velocity) < 1e-12
        assert abs(s.acceleration) < 1e-12


@given(tf=durations, frac=st.floats(min_value=0.0, max_value=1.0))
def test_ratio_symmetry(tf, frac):
    t = frac * tf
    assert interpolation_ratio(t, tf) + interpolation_ratio(tf - t, tf) == pytest.approx(1.0, abs=1e-12)


@given(th0=angles, delta=st.floats(min_value=1e-3, max_value=3.0), tf=durations)
def test_monotone_rise(th0, delta, tf):
    seg = TrajectorySegment(th0, th0 + delta, tf)
    angle, _, _ = evaluate_arrays(seg, np.linspace(0, tf, 201))
    assert np.all(np.diff(angle) >= -1e-15)


def _exact_angle(seg, t):
    """Angle in exact rational arithmetic, independent of the float path."""
    th0, d, tf = Fraction(seg.theta_initial), Fraction(seg.amplitude), Fraction(seg.duration)
    s = Fraction(t) / tf
    return th0 + d * (10 * s**3 - 15 * s**4 + 6 * s**5)


def test_derivatives_match_finite_differences():
    seg = TrajectorySegment(0.0, PAPER_RANGE, 1.0)
    h = Fraction(1, 10**5) * Fraction(seg.duration)
    times = [i / 100 for i in range(2, 99) if abs(i - 50) > 2]
    for t in times:
        tq = Fraction(t)
        a_m, a_0, a_p = (_exact_angle(seg, tq + k * h) for k in (-1, 0, 1))
        fd_vel = float((a_p - a_m) / (2 * h))
        fd_acc = float((a_p - 2 * a_0 + a_m) / h**2)
        s = evaluate(seg, t)
        assert s.velocity == pytest.approx(fd_vel, rel=1e-6)
        assert s.acceleration == pytest.approx(fd_acc, rel=1e-6)
