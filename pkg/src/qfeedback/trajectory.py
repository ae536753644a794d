"""Mutual information as a function of angle-time.

Time is measured by accumulated Bloch rotation angle at constant
rotation speed: the auxiliary's angle during the measurement leg (0 to
theta) and the system's angle during the feedback leg (0 to phi for the
x-protocol, 0 to pi for the z-protocol).  In explicit mode the
decoherence map fires instantaneously at the leg boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import dagger, partial_trace, tensor_product
from .protocol import (
    X_BASIS,
    ProtocolConfig,
    decohere_auxiliary,
    feedback_branch_angles,
    feedback_from_angles,
    measurement_unitary,
)
from .states import qubit_from_bloch
from .thermo import von_neumann_entropy


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    stage: str
    I: float
    H_S: float
    H_A: float


def feedback_duration(config: ProtocolConfig) -> float:
    """Angle-time of the feedback leg (phi for x, pi for z)."""
    _, phi = feedback_branch_angles(config.axis, config.theta, config.alpha, config.lam)
    return phi


def joint_state_at(config: ProtocolConfig, t: float) -> np.ndarray:
    """Joint state at angle-time t along the protocol.

    t in [0, theta] is partial measurement; t in (theta, theta + phi] is
    partial feedback applied to the (possibly decohered) post-measurement
    state.
    """
    phi = feedback_duration(config)
    if not 0.0 <= t <= config.theta + phi + 1e-12:
        raise ValueError(f"t={t} outside [0, {config.theta + phi}]")

    rho = qubit_from_bloch((0.0, 0.0, -config.alpha))
    chi = qubit_from_bloch((0.0, 0.0, -config.lam))
    joint = tensor_product(rho, chi)

    if t <= config.theta:
        u = measurement_unitary(config.axis, t)
        return u @ joint @ dagger(u)

    u = measurement_unitary(config.axis, config.theta)
    joint = u @ joint @ dagger(u)
    if config.mode == "explicit":
        joint = decohere_auxiliary(joint, X_BASIS)
    fraction = (t - config.theta) / phi if phi > 0.0 else 1.0
    angles, _ = feedback_branch_angles(config.axis, config.theta, config.alpha, config.lam)
    u_fb = feedback_from_angles([a * fraction for a in angles])
    return u_fb @ joint @ dagger(u_fb)


def _point(t: float, stage: str, joint: np.ndarray) -> TrajectoryPoint:
    h_s = von_neumann_entropy(partial_trace(joint, "system"))
    h_a = von_neumann_entropy(partial_trace(joint, "auxiliary"))
    return TrajectoryPoint(t=t, stage=stage, I=h_s + h_a - von_neumann_entropy(joint),
                           H_S=h_s, H_A=h_a)


def mutual_information_trace(config: ProtocolConfig,
                             samples_per_stage: int = 200) -> list[TrajectoryPoint]:
    """Sampled mutual-information trajectory over measurement + feedback.

    The feedback leg starts with a point at t = theta so an explicit-mode
    decoherence jump is visible in the trace.
    """
    if samples_per_stage < 2:
        raise ValueError("samples_per_stage must be at least 2")
    phi = feedback_duration(config)
    points = [
        _point(t, "measurement", joint_state_at(config, t))
        for t in np.linspace(0.0, config.theta, samples_per_stage)
    ]
    for f in np.linspace(0.0, 1.0, samples_per_stage):
        t = config.theta + f * phi
        # nextafter keeps t = theta itself on the post-decoherence side
        points.append(_point(t, "feedback",
                             joint_state_at(config, np.nextafter(t, np.inf) if f == 0.0 else t)))
    return points
