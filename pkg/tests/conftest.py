import math

import pytest

from dynfatigue.anthropometry import Subject, derive_body_params
from dynfatigue.dynamics import MotionSpec
from dynfatigue.experiment import default_motion_spec


@pytest.fixture
def paper_spec() -> MotionSpec:
    return default_motion_spec()


@pytest.fixture
def fast_spec() -> MotionSpec:
    """Quicker stroke whose top-of-motion deceleration drives torque negative."""
    return MotionSpec(
        body=derive_body_params(Subject(1.88, 80.0)),
        load_mass=3.0,
        theta_low=0.0,
        theta_high=math.radians(75.0),
        half_period=0.5,
        time_step=5e-4,
    )


# Acceptance reporting: one line per criterion in the terminal summary.
_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        status = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE.append((str(number), status, title))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title in _ACCEPTANCE:
        terminalreporter.write_line(f"criterion {number:<3} {status}  {title}")
