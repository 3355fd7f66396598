"""Command-line front end: ``simulate``, ``estimate`` and ``predict``.

Every command reads an optional JSON config (``--config``), applies flag
overrides, and writes CSV/JSON/SVG artifacts into ``--out``. Failures print a
single ``dynfatigue: error: <kind>: <message>`` line on stderr and exit 1.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from dynfatigue import svg
from dynfatigue.anthropometry import Subject, derive_body_params
from dynfatigue.dynamics import (
    DEFAULT_GRAVITY,
    DEFAULT_TIME_STEP,
    MotionSpec,
    cumulative_split,
    torque_profile,
)
from dynfatigue.experiment import (
    CHANNELS,
    PAPER_BAR_MASS,
    PAPER_HALF_PERIOD,
    PAPER_SUBJECT,
    PAPER_THETA_HIGH_DEG,
    Summary,
    bundled_table2,
    load_measurements,
    prediction_envelope,
    run_estimation,
)

PROG = "dynfatigue"


class CliError(Exception):
    pass


@dataclass
class SubjectConfig:
    height_m: float = PAPER_SUBJECT.height
    mass_kg: float = PAPER_SUBJECT.mass


@dataclass
class MotionConfig:
    theta_low_deg: float = 0.0
    theta_high_deg: float = PAPER_THETA_HIGH_DEG
    half_period_s: float = PAPER_HALF_PERIOD
    bar_mass_kg: float = PAPER_BAR_MASS
    dt_s: float = DEFAULT_TIME_STEP
    gravity_m_s2: float = DEFAULT_GRAVITY


@dataclass
class PathsConfig:
    measurements: str | None = None  # None means the bundled table
    output: str = "out"


@dataclass
class RunConfig:
    subject: SubjectConfig = field(default_factory=SubjectConfig)
    motion: MotionConfig = field(default_factory=MotionConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        sections = {"subject": SubjectConfig, "motion": MotionConfig, "paths": PathsConfig}
        unknown = set(data) - set(sections)
        if unknown:
            raise CliError(f"config: unknown section(s) {sorted(unknown)}")
        kwargs = {}
        for name, kind in sections.items():
            raw = data.get(name, {})
            if not isinstance(raw, dict):
                raise CliError(f"config: section {name!r} must be an object")
            allowed = {f.name for f in dataclasses.fields(kind)}
            bad = set(raw) - allowed
            if bad:
                raise CliError(f"config: unknown field(s) in {name}: {sorted(bad)}")
            for key, value in raw.items():
                if name != "paths" and (isinstance(value, bool) or not isinstance(value, (int, float))):
                    raise CliError(f"config: {name}.{key} must be a number")
                if name == "paths" and value is not None and not isinstance(value, str):
                    raise CliError(f"config: {name}.{key} must be a string")
            kwargs[name] = kind(**{k: (float(v) if name != "paths" else v) for k, v in raw.items()})
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def motion_spec(self) -> MotionSpec:
        subject = Subject(self.subject.height_m, self.subject.mass_kg)
        m = self.motion
        return MotionSpec(
            body=derive_body_params(subject),
            load_mass=m.bar_mass_kg,
            theta_low=math.radians(m.theta_low_deg),
            theta_high=math.radians(m.theta_high_deg),
            half_period=m.half_period_s,
            time_step=m.dt_s,
            gravity=m.gravity_m_s2,
        )


_OVERRIDES = (
    # flag, section, field, scale
    ("height_m", "subject", "height_m", 1.0),
    ("height_cm", "subject", "height_m", 0.01),
    ("mass_kg", "subject", "mass_kg", 1.0),
    ("theta_low_deg", "motion", "theta_low_deg", 1.0),
    ("theta_high_deg", "motion", "theta_high_deg", 1.0),
    ("half_period_s", "motion", "half_period_s", 1.0),
    ("bar_mass_kg", "motion", "bar_mass_kg", 1.0),
    ("dt_s", "motion", "dt_s", 1.0),
    ("gravity_m_s2", "motion", "gravity_m_s2", 1.0),
)


def build_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        path = Path(args.config)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise CliError(f"{path}: cannot read config: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
        if not isinstance(data, dict):
            raise CliError(f"{path}: config must be a JSON object")
        config = RunConfig.from_dict(data)
    else:
        config = RunConfig()
    for flag, section, name, scale in _OVERRIDES:
        value = getattr(args, flag, None)
        if value is not None:
            setattr(getattr(config, section), name, value * scale)
    if args.measurements is not None:
        config.paths.measurements = args.measurements
    if args.out is not None:
        config.paths.output = args.out
    return config


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.paths.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"{out}: cannot create output directory: {exc.strerror}") from None
    return out


def _write_csv(path: Path, header, rows) -> None:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([repr(float(v)) for v in row])
    except OSError as exc:
        raise CliError(f"{path}: cannot write: {exc.strerror}") from None


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: cannot write: {exc.strerror}") from None


def _measurements(config: RunConfig):
    if config.paths.measurements is None:
        return bundled_table2()
    return load_measurements(config.paths.measurements)


def cmd_simulate(config: RunConfig) -> list[Path]:
    spec = config.motion_spec()
    out = _output_dir(config)
    profile = torque_profile(spec)
    agonist, antagonist = cumulative_split(profile)
    t = profile.time

    files = {
        "trajectory": out / "trajectory.csv",
        "torque": out / "torque.csv",
        "momentum": out / "momentum.csv",
    }
    _write_csv(
        files["trajectory"],
        ("time_s", "angle_rad", "velocity_rad_s", "acceleration_rad_s2"),
        zip(t, profile.angle, profile.velocity, profile.acceleration),
    )
    try:
        with files["torque"].open("w", newline="", encoding="utf-8") as fh:
            profile.to_csv(fh)
    except OSError as exc:
        raise CliError(f"{files['torque']}: cannot write: {exc.strerror}") from None
    _write_csv(files["momentum"], ("time_s", "agonist_Nms", "antagonist_Nms"), zip(t, agonist, antagonist))

    charts = [
        (
            "trajectory.svg",
            "Joint kinematics over one cycle",
            "time [s]",
            "angle [rad], velocity [rad/s], acceleration [rad/s^2]",
            [("angle", t, profile.angle), ("velocity", t, profile.velocity), ("acceleration", t, profile.acceleration)],
        ),
        ("torque.svg", "Elbow joint torque", "time [s]", "torque [N m]", [("torque", t, profile.torque)]),
        (
            "momentum.svg",
            "Cumulative joint momentum",
            "time [s]",
            "momentum [N m s]",
            [("agonist", t, agonist), ("antagonist", t, antagonist)],
        ),
    ]
    written = list(files.values())
    for name, title, xl, yl, series in charts:
        path = out / name
        _write_text(path, svg.line_chart(title, xl, yl, series))
        written.append(path)
    return written


def cmd_estimate(config: RunConfig) -> list[Path]:
    spec = config.motion_spec()
    report = run_estimation(_measurements(config), spec)
    out = _output_dir(config)
    path = out / "report.json"
    _write_text(path, report.to_json())
    return [path]


def _summary_from_report_file(path: Path, channel: str) -> Summary | None:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(f"{path}: cannot read report: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    entry = data.get("summary", {}).get(channel)
    if entry is None:
        return None
    return Summary(float(entry["min"]), float(entry["mean"]), float(entry["max"]))


def cmd_predict(config: RunConfig, channel: str, horizon_min: float, report_path: str | None = None) -> list[Path]:
    if channel not in CHANNELS:
        raise CliError(f"channel must be one of {CHANNELS}, got {channel!r}")
    if not horizon_min >= 0:
        raise CliError(f"horizon must be nonnegative, got {horizon_min}")
    spec = config.motion_spec()
    measurements = _measurements(config)
    report = run_estimation(measurements, spec)
    if report_path is not None:
        summary = dict(report.summary)
        summary[channel] = _summary_from_report_file(Path(report_path), channel)
        report = dataclasses.replace(report, summary=summary)

    points = max(2, int(round(horizon_min * 60)) + 1)
    envelope = prediction_envelope(report, channel, horizon_min, points=points)
    out = _output_dir(config)

    env_path = out / f"envelope_{channel}.csv"
    _write_csv(
        env_path,
        ("time_min", "cem_min_k", "cem_avg_k", "cem_max_k"),
        zip(
            envelope.minimum.time,
            envelope.minimum.cem_torque,
            envelope.average.cem_torque,
            envelope.maximum.cem_torque,
        ),
    )
    measured = [(t, v) for t, v in zip(measurements.time, measurements.channel(channel)) if t <= horizon_min]
    meas_path = out / f"measured_{channel}.csv"
    _write_csv(meas_path, ("time_min", "measured_Nm"), measured)

    r = envelope.rates
    series = [
        (f"k min = {r.min:.4g}", envelope.minimum.time, envelope.minimum.cem_torque),
        (f"k avg = {r.mean:.4g}", envelope.average.time, envelope.average.cem_torque),
        (f"k max = {r.max:.4g}", envelope.maximum.time, envelope.maximum.cem_torque),
    ]
    markers = [("measured", [m[0] for m in measured], [m[1] for m in measured])]
    svg_path = out / f"envelope_{channel}.svg"
    _write_text(
        svg_path,
        svg.line_chart(f"Predicted capacity, {channel} channel", "time [min]", "torque [N m]", series, markers),
    )
    return [env_path, meas_path, svg_path]


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--out", help="output directory")
    p.add_argument("--dump-config", action="store_true", help="print the effective config as JSON and exit")
    p.add_argument("--measurements", help="measurement CSV (time_min,push_Nm,pull_Nm); default: bundled table")
    height = p.add_mutually_exclusive_group()
    height.add_argument("--height-m", type=float)
    height.add_argument("--height-cm", type=float)
    p.add_argument("--mass-kg", type=float)
    p.add_argument("--theta-low-deg", type=float)
    p.add_argument("--theta-high-deg", type=float)
    p.add_argument("--half-period-s", type=float)
    p.add_argument("--bar-mass-kg", type=float)
    p.add_argument("--dt-s", type=float)
    p.add_argument("--gravity-m-s2", type=float)
    return p


def make_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="write one-cycle kinematics, torque and momentum")
    sub.add_parser("estimate", parents=[common], help="estimate fatigue rates from measurements")
    predict = sub.add_parser("predict", parents=[common], help="write the min/avg/max-k capacity envelope")
    predict.add_argument("--channel", choices=CHANNELS, default="agonist")
    predict.add_argument("--horizon-min", type=float, default=5.0)
    predict.add_argument("--report", help="take k summaries from this report.json instead of re-estimating")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
        if args.dump_config:
            sys.stdout.write(json.dumps(config.to_dict(), indent=2) + "\n")
            return 0
        if args.command == "simulate":
            written = cmd_simulate(config)
        elif args.command == "estimate":
            written = cmd_estimate(config)
        else:
            written = cmd_predict(config, args.channel, args.horizon_min, args.report)
    except (CliError, ValueError) as exc:
        kind = type(exc).__name__
        message = " ".join(str(exc).split())
        sys.stderr.write(f"{PROG}: error: {kind}: {message}\n")
        return 1
    for path in written:
        sys.stdout.write(f"{path}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
