"""Two-wave gait generation for an alternating-axis joint chain.

The gait commands N lateral joints and N+1 vertical joints with sinusoids
sharing one temporal frequency and one spatial frequency:

    alpha_lat(t, i)  = A_l * sin(w*t + 2*pi*xi*i/N + lateral_phase)
    alpha_vert(t, i) = A_v * cos(w*t + 2*pi*xi*i/N)

xi = 0 degenerates to the in-phase rolling gait (every joint of an axis
shares one angle); xi > 0 staggers the wave along the body.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * math.pi

# Servo-realistic joint limit; also keeps the kinematic chain from
# self-intersecting at full curl.
MAX_AMPLITUDE = math.pi / 2


@dataclass(frozen=True)
class GaitParams:
    """Parameters of the two-wave gait.

    lateral_phase shifts the lateral wave only; pi flips the handedness of
    the gait (mirror locomotion) without touching the vertical wave.
    """

    amplitude_lateral: float = math.pi / 4
    amplitude_vertical: float = math.pi / 4
    temporal_frequency: float = 1.0
    spatial_frequency: float = 0.0
    num_lateral_joints: int = 4
    lateral_phase: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude_lateral <= MAX_AMPLITUDE:
            raise ConfigError(
                f"amplitude_lateral {self.amplitude_lateral} outside [0, pi/2]")
        if not 0.0 <= self.amplitude_vertical <= MAX_AMPLITUDE:
            raise ConfigError(
                f"amplitude_vertical {self.amplitude_vertical} outside [0, pi/2]")
        if not self.temporal_frequency > 0.0:
            raise ConfigError("temporal_frequency must be positive")
        if self.spatial_frequency < 0.0:
            raise ConfigError("spatial_frequency must be >= 0")
        if self.num_lateral_joints < 1:
            raise ConfigError("num_lateral_joints must be >= 1")

    @property
    def num_vertical_joints(self) -> int:
        return self.num_lateral_joints + 1

    @property
    def period(self) -> float:
        return TWO_PI / self.temporal_frequency


@dataclass(frozen=True)
class JointAngles:
    """Joint angles of both waves at one instant."""

    lateral: np.ndarray
    vertical: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "lateral", np.asarray(self.lateral, dtype=float))
        object.__setattr__(self, "vertical", np.asarray(self.vertical, dtype=float))


def _wave_phase(params: GaitParams, t: float, i: int) -> float:
    # Both waves share the 2*pi*xi*i/N spatial lag with N = lateral count.
    return (params.temporal_frequency * t
            + TWO_PI * params.spatial_frequency * i / params.num_lateral_joints)


def lateral_angle(params: GaitParams, t: float, i: int) -> float:
    """Lateral joint angle, joints indexed 1..N."""
    if not 1 <= i <= params.num_lateral_joints:
        raise IndexError(f"lateral joint index {i} outside 1..{params.num_lateral_joints}")
    return params.amplitude_lateral * math.sin(
        _wave_phase(params, t, i) + params.lateral_phase)


def vertical_angle(params: GaitParams, t: float, i: int) -> float:
    """Vertical joint angle, joints indexed 1..N+1."""
    if not 1 <= i <= params.num_vertical_joints:
        raise IndexError(f"vertical joint index {i} outside 1..{params.num_vertical_joints}")
    return params.amplitude_vertical * math.cos(_wave_phase(params, t, i))


def joint_vector(params: GaitParams, t: float) -> JointAngles:
    """All joint angles at time t.

    Built from the scalar evaluators so batch and scalar paths agree bitwise.
    """
    lat = np.array([lateral_angle(params, t, i)
                    for i in range(1, params.num_lateral_joints + 1)])
    vert = np.array([vertical_angle(params, t, i)
                     for i in range(1, params.num_vertical_joints + 1)])
    return JointAngles(lateral=lat, vertical=vert, time=t)


def phase_lag(params: GaitParams) -> float:
    """Phase lag between adjacent joints of one axis: 2*pi*xi/N."""
    return TWO_PI * params.spatial_frequency / params.num_lateral_joints


def coherence(xi: float, num_lateral_joints: int = 4) -> float:
    """Phase-coherence factor of the staggered segment roll commands.

    C(xi) = |sum_{i=1..N} exp(j*2*pi*xi*i/N)| / N. Equals 1 when all
    segments push in phase (xi = 0) and decays as the commands fan out.
    """
    n = num_lateral_joints
    if n < 1:
        raise ConfigError("num_lateral_joints must be >= 1")
    total = sum(cmath.exp(1j * TWO_PI * xi * i / n) for i in range(1, n + 1))
    return abs(total) / n
