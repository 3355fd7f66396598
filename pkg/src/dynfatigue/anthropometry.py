"""Forearm and hand segment parameters scaled from body height and mass."""

from __future__ import annotations

from dataclasses import dataclass

from dynfatigue.errors import DomainError

FOREARM_LENGTH_PER_HEIGHT = 0.146
FOREARM_RADIUS_PER_LENGTH = 0.125
HAND_LENGTH_PER_HEIGHT = 0.108
FOREARM_MASS_PER_BODY_MASS = 0.023


@dataclass(frozen=True)
class Subject:
    height: float  # m
    mass: float  # kg

    def __post_init__(self) -> None:
        if not self.height > 0:
            raise DomainError(f"height must be positive, got {self.height!r}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass!r}")


@dataclass(frozen=True)
class BodyParams:
    """Segment geometry used by the elbow model.

    The hand is treated as massless; only its length enters the model
    (it positions the held load).
    """

    forearm_length: float  # m
    forearm_radius: float  # m
    hand_length: float  # m
    forearm_mass: float  # kg


def derive_body_params(subject: Subject) -> BodyParams:
    forearm_length = FOREARM_LENGTH_PER_HEIGHT * subject.height
    return BodyParams(
        forearm_length=forearm_length,
        forearm_radius=FOREARM_RADIUS_PER_LENGTH * forearm_length,
        hand_length=HAND_LENGTH_PER_HEIGHT * subject.height,
        forearm_mass=FOREARM_MASS_PER_BODY_MASS * subject.mass,
    )
