"""Forward kinematics for the arm and head chains and the fixed torso frame tree.

Frame conventions (single source of truth, referenced by docs elsewhere):

* Neck-base frame: the world frame for perception and planning. +z points up,
  so both shoulders sit at z = -neck_length below the neck base.
* Shoulder frames: axes parallel to the neck frame (identity rotation),
  translated to (0, +spacing/2, -neck_length) for the left arm and
  (0, -spacing/2, -neck_length) for the right arm.
* Arm poses are reported in shoulder-frame axes chosen so that the
  closed-form position model holds verbatim: at zero joints the end-effector
  sits at (0, 0, L1 + L2 + l_eff + L0), i.e. along +z.
* The raw six-row DH chain uses a different base orientation; the two are
  related by the fixed change of basis ``DH_TO_SHOULDER_AXES`` below, which
  was determined numerically (see tests) and is applied inside arm FK.
* Head chain outputs map camera-frame points into the neck-base frame; at
  zero pan/tilt the camera sits at (L_H1, 0, L_H0) and its optical axis
  points along -y of the neck frame (see perception module docs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError, JointLimitError
from .transforms import DHRow, RigidTransform, dh_row_to_transform, wrap_angle

ARM_JOINTS = 6
HEAD_JOINTS = 2

# Fixed rigid change of basis between the raw DH arm-base axes and the
# shoulder axes in which the closed-form position model is written.
# Determined by requiring FK-at-zero-wrist to equal the closed form for all
# (theta0, theta1, theta2); it is a proper rotation (180 degrees about the
# axis (1, -1, 0)/sqrt(2)).
DH_TO_SHOULDER_AXES = np.array([
    [0.0, -1.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0],
])

_DH_TO_SHOULDER = RigidTransform(DH_TO_SHOULDER_AXES, np.zeros(3))

DEFAULT_LIMIT = (-math.pi, math.pi)


@dataclass(frozen=True)
class SheetSpec:
    """Aluminium sheet stock the links are cut from.

    density kg/cm^3, thickness cm, breadth cm. The derived linear density
    K = density * breadth * thickness (kg/cm) drives the link mass model.
    """

    density: float = 2.7e-3
    thickness: float = 0.3
    breadth: float = 12.0

    def __post_init__(self):
        # zero is allowed: a weightless sheet is a valid degenerate model
        for name in ("density", "thickness", "breadth"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise InvalidParameterError(f"sheet {name} must be >= 0, got {v!r}")

    @property
    def K(self) -> float:
        return self.density * self.breadth * self.thickness


@dataclass(frozen=True)
class ArmSpec:
    """Geometric and mass parameters of one arm.

    Lengths in cm: L0 shoulder offset (no nominal value exists for it, so it
    defaults to 0 and is a pure configuration knob), L1 upper link, L2
    forearm, l_eff end-effector. Masses in kg: m per motor, m_p payload.
    joint_limits are (lo, hi) pairs in radians after wrapping to (-pi, pi].
    """

    L0: float = 0.0
    L1: float = 20.0
    L2: float = 22.0
    l_eff: float = 8.0
    m: float = 0.064
    m_p: float = 0.2
    sheet: SheetSpec = field(default_factory=SheetSpec)
    joint_limits: Tuple[Tuple[float, float], ...] = (DEFAULT_LIMIT,) * ARM_JOINTS

    def __post_init__(self):
        for name in ("L0", "L1", "L2", "l_eff"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise InvalidParameterError(f"arm length {name} must be >= 0, got {v!r}")
        if self.L1 + self.L2 + self.l_eff <= 0:
            raise InvalidParameterError("total arm length must be positive")
        for name in ("m", "m_p"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise InvalidParameterError(f"mass {name} must be >= 0, got {v!r}")
        if len(self.joint_limits) != ARM_JOINTS:
            raise InvalidParameterError("joint_limits must have six (lo, hi) pairs")
        object.__setattr__(
            self, "joint_limits", tuple((float(lo), float(hi)) for lo, hi in self.joint_limits)
        )

    @property
    def reach(self) -> float:
        """Maximum end-effector distance from the shoulder (cm)."""
        return self.L1 + self.L2 + self.l_eff

    @property
    def link_budget(self) -> float:
        """Total structural link length L1 + L2 the design sweep redistributes."""
        return self.L1 + self.L2


@dataclass(frozen=True)
class BodyGeometry:
    """Fixed torso geometry: neck, shoulder spacing and the two head links."""

    neck_length: float = 46.0
    shoulder_spacing: float = 76.0
    L_H0: float = 5.0
    L_H1: float = 3.4
    head_limits: Tuple[Tuple[float, float], ...] = (DEFAULT_LIMIT,) * HEAD_JOINTS

    def __post_init__(self):
        for name in ("neck_length", "shoulder_spacing", "L_H0", "L_H1"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"body geometry {name} must be positive, got {v!r}")
        if len(self.head_limits) != HEAD_JOINTS:
            raise InvalidParameterError("head_limits must have two (lo, hi) pairs")


@dataclass(frozen=True)
class JointVector:
    """Ordered joint angles for one chain, radians. arity 6 for arm, 2 for head."""

    values: Tuple[float, ...]
    kind: str = "arm"

    def __post_init__(self):
        if self.kind not in ("arm", "head"):
            raise InvalidParameterError(f"unknown chain kind {self.kind!r}")
        arity = ARM_JOINTS if self.kind == "arm" else HEAD_JOINTS
        vals = tuple(float(v) for v in self.values)
        if len(vals) != arity:
            raise InvalidParameterError(f"{self.kind} chain takes {arity} joints, got {len(vals)}")
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParameterError("joint values must be finite")
        object.__setattr__(self, "values", vals)

    def wrapped(self) -> "JointVector":
        return JointVector(tuple(wrap_angle(v) for v in self.values), self.kind)


@dataclass(frozen=True)
class Pose:
    """A chain end frame expressed in the chain base frame."""

    transform: RigidTransform

    @property
    def position(self) -> np.ndarray:
        return self.transform.translation

    @property
    def rotation(self) -> np.ndarray:
        return self.transform.rotation


def check_limits(values: Sequence[float], limits: Sequence[Tuple[float, float]], what: str) -> None:
    for i, (v, (lo, hi)) in enumerate(zip(values, limits)):
        w = wrap_angle(v)
        if not (lo <= w <= hi):
            raise JointLimitError(f"{what} joint {i} = {w:.6f} rad outside [{lo:.6f}, {hi:.6f}]")


def arm_dh_rows(spec: ArmSpec, joints: Sequence[float]) -> List[DHRow]:
    """The six arm DH rows with the structural theta offsets applied."""
    t0, t1, t2, t3, t4, t5 = joints
    return [
        DHRow(t0, -math.pi / 2, 0.0, -spec.L0),
        DHRow(t1 + math.pi / 2, 0.0, spec.L1, 0.0),
        DHRow(t2 - math.pi / 2, -math.pi / 2, 0.0, 0.0),
        DHRow(t3, math.pi / 2, 0.0, spec.L2),
        DHRow(t4, -math.pi / 2, 0.0, 0.0),
        DHRow(t5, 0.0, 0.0, spec.l_eff),
    ]


def head_dh_rows(geometry: BodyGeometry, joints: Sequence[float]) -> List[DHRow]:
    """The two head DH rows: pan about the neck axis, then tilt."""
    h0, h1 = joints
    return [
        DHRow(h0, math.pi / 2, 0.0, geometry.L_H0),
        DHRow(h1, 0.0, geometry.L_H1, 0.0),
    ]


def arm_frames(spec: ArmSpec, joints: JointVector) -> List[RigidTransform]:
    """All seven arm frames (base plus one per row) in shoulder axes.

    The raw DH products are rotated into shoulder axes by the fixed
    ``DH_TO_SHOULDER_AXES`` basis, so downstream consumers never see the raw
    DH base orientation.
    """
    if joints.kind != "arm":
        raise InvalidParameterError("arm_frames expects an arm joint vector")
    check_limits(joints.values, spec.joint_limits, "arm")
    frames = [_DH_TO_SHOULDER]
    T = _DH_TO_SHOULDER
    for row in arm_dh_rows(spec, joints.values):
        T = T @ dh_row_to_transform(row)
        frames.append(T)
    return frames


def arm_fk(spec: ArmSpec, joints: JointVector) -> Pose:
    """End-effector pose in the shoulder frame for the six arm joints."""
    return Pose(arm_frames(spec, joints)[-1])


def head_frames(geometry: BodyGeometry, joints: JointVector) -> List[RigidTransform]:
    if joints.kind != "head":
        raise InvalidParameterError("head_frames expects a head joint vector")
    check_limits(joints.values, geometry.head_limits, "head")
    frames = [RigidTransform.identity()]
    T = RigidTransform.identity()
    for row in head_dh_rows(geometry, joints.values):
        T = T @ dh_row_to_transform(row)
        frames.append(T)
    return frames


def head_fk(geometry: BodyGeometry, joints: JointVector) -> Pose:
    """Camera pose in the neck-base frame for the pan and tilt joints.

    The returned transform maps camera-frame points into the neck-base frame.
    """
    return Pose(head_frames(geometry, joints)[-1])


def position_closed_form(spec: ArmSpec, theta0: float, theta1: float, theta2: float) -> np.ndarray:
    """Closed-form end-effector position from the first three joints.

    x = B sin(t0), y = B cos(t0), z = L1 cos(t1) + (L2+l_eff) cos(t1+t2) + L0
    with B = L1 sin(t1) + (L2+l_eff) sin(t1+t2). Valid when the wrist is at
    zero, which keeps the tool offset collinear with the forearm.
    """
    for v in (theta0, theta1, theta2):
        if not math.isfinite(v):
            raise InvalidParameterError("closed-form angles must be finite")
    return _lumped_position(spec.L1, spec.L2 + spec.l_eff, spec.L0, theta0, theta1, theta2)


def _lumped_position(l1: float, lb: float, l0: float,
                     t0: float, t1: float, t2: float) -> np.ndarray:
    """Pan-plus-two-link position model with an arbitrary distal lump lb.

    Shared by the closed form (lb = L2 + l_eff) and the wrist-center solve
    (lb = L2).
    """
    b = l1 * math.sin(t1) + lb * math.sin(t1 + t2)
    return np.array([
        b * math.sin(t0),
        b * math.cos(t0),
        l1 * math.cos(t1) + lb * math.cos(t1 + t2) + l0,
    ])


def shoulder_frames(geometry: BodyGeometry) -> Tuple[RigidTransform, RigidTransform]:
    """(left, right) shoulder frames in the neck-base frame.

    Identity rotation; the left shoulder sits at +spacing/2 along y, the
    right at -spacing/2, both a neck length below the neck base.
    """
    half = geometry.shoulder_spacing / 2.0
    left = RigidTransform(np.eye(3), np.array([0.0, +half, -geometry.neck_length]))
    right = RigidTransform(np.eye(3), np.array([0.0, -half, -geometry.neck_length]))
    return left, right
