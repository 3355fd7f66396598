"""Joint-level dynamic muscle fatigue for cyclic single-joint motions."""

from dynfatigue.anthropometry import BodyParams, Subject, derive_body_params
from dynfatigue.dynamics import (
    MomentumSplit,
    MotionSpec,
    TorqueProfile,
    cumulative_momentum,
    joint_torque,
    momentum_split,
    torque_profile,
)
from dynfatigue.errors import (
    ConfigurationError,
    DomainError,
    EstimationError,
    MeasurementParseError,
)
from dynfatigue.experiment import (
    EstimationReport,
    MeasurementSet,
    default_motion_spec,
    load_measurements,
    prediction_envelope,
    run_estimation,
)
from dynfatigue.fatigue import (
    CapacityCurve,
    FatigueParams,
    capacity_closed_form,
    capacity_ode,
    estimate_k,
)
from dynfatigue.trajectory import (
    KinematicSample,
    TrajectorySegment,
    evaluate,
    interpolation_ratio,
    make_cycle,
)

__all__ = [
    "BodyParams",
    "CapacityCurve",
    "ConfigurationError",
    "DomainError",
    "EstimationError",
    "EstimationReport",
    "FatigueParams",
    "KinematicSample",
    "MeasurementParseError",
    "MeasurementSet",
    "MomentumSplit",
    "MotionSpec",
    "Subject",
    "TorqueProfile",
    "TrajectorySegment",
    "capacity_closed_form",
    "capacity_ode",
    "cumulative_momentum",
    "default_motion_spec",
    "derive_body_params",
    "estimate_k",
    "evaluate",
    "interpolation_ratio",
    "joint_torque",
    "load_measurements",
    "make_cycle",
    "momentum_split",
    "prediction_envelope",
    "run_estimation",
    "torque_profile",
]
