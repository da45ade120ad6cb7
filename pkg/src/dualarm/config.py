"""Aggregate robot configuration with YAML loading.

Every knob defaults to the shipped robot's constants, so an empty document
is a valid configuration. Unknown keys are rejected at every nesting level
to catch typos early. Field names match the domain types one to one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np
import yaml

from .chain import ArmSpec, BodyGeometry, JointVector, SheetSpec
from .design import MotorSpec
from .errors import ConfigError
from .ik import IKParams
from .perception import CameraModel
from .planner.pickplace import WorkspaceModel
from .planner.tictactoe import BoardGeometry
from .transforms import RigidTransform

SCHEMA_VERSION = 1

# demo scene: board lying flat in front of the torso, centered on the
# sagittal plane at a height both arms reach; the X-token pickup point sits
# between the arms on the same table plane
DEFAULT_BOARD_TRANSLATION = (1.0, -14.85, -52.0)
DEFAULT_TOKEN_SOURCE = (15.0, 0.0, -52.0)


def _take(d: Dict[str, Any], ctx: str, **known):
    """Pop known keys (with defaults) and reject anything left over."""
    out = {}
    for key, default in known.items():
        out[key] = d.pop(key) if key in d else default
    if d:
        raise ConfigError(f"unknown {ctx} fields: {sorted(d)}")
    return out


@dataclass(frozen=True)
class CameraConfig:
    """Pinhole intrinsics plus the head joint state the camera is read at.

    The identity default (fx = fy = 1, centered at 0) keeps hand-checkable
    numbers in tests; real intrinsics come from calibration output.
    """

    fx: float = 1.0
    fy: float = 1.0
    cx: float = 0.0
    cy: float = 0.0
    skew: float = 0.0
    head_joints: Tuple[float, float] = (0.0, 0.0)

    @property
    def K(self) -> np.ndarray:
        return np.array([
            [self.fx, self.skew, self.cx],
            [0.0, self.fy, self.cy],
            [0.0, 0.0, 1.0],
        ])

    def model(self, body: BodyGeometry) -> CameraModel:
        return CameraModel(self.K, JointVector(self.head_joints, "head"), body)


@dataclass(frozen=True)
class PlannerConfig:
    inner_radius: float = 5.0
    approach_offset: float = 5.0
    handover_forward: float = 20.0
    handover_height: Optional[float] = None
    steps_per_move: int = 50
    token_source: Tuple[float, float, float] = DEFAULT_TOKEN_SOURCE


@dataclass(frozen=True)
class ServiceConfig:
    journal_path: Optional[str] = None


@dataclass(frozen=True)
class RobotConfig:
    arm: ArmSpec = field(default_factory=ArmSpec)
    body: BodyGeometry = field(default_factory=BodyGeometry)
    motor: MotorSpec = field(default_factory=MotorSpec)
    ik: IKParams = field(default_factory=IKParams)
    board: BoardGeometry = field(default_factory=lambda: _default_board())
    camera: CameraConfig = field(default_factory=CameraConfig)
    planner: PlannerConfig = field(default_factory=PlannerConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)

    def workspace(self) -> WorkspaceModel:
        return WorkspaceModel.from_specs(self.body, self.arm, self.planner.inner_radius)

    def camera_model(self) -> CameraModel:
        return self.camera.model(self.body)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "arm": {
                "L0": self.arm.L0, "L1": self.arm.L1, "L2": self.arm.L2,
                "l_eff": self.arm.l_eff, "m": self.arm.m, "m_p": self.arm.m_p,
                "sheet": {
                    "density": self.arm.sheet.density,
                    "thickness": self.arm.sheet.thickness,
                    "breadth": self.arm.sheet.breadth,
                },
                "joint_limits": [list(l) for l in self.arm.joint_limits],
            },
            "body": {
                "neck_length": self.body.neck_length,
                "shoulder_spacing": self.body.shoulder_spacing,
                "L_H0": self.body.L_H0, "L_H1": self.body.L_H1,
            },
            "motor": {
                "stall_torque": self.motor.stall_torque,
                "efficiency": self.motor.efficiency,
                "safety_factor": self.motor.safety_factor,
                "shoulder_motor_count": self.motor.shoulder_motor_count,
            },
            "ik": {
                "gamma": self.ik.gamma, "tol": self.ik.tol,
                "max_iter": self.ik.max_iter, "damping": self.ik.damping,
                "restarts": self.ik.restarts, "step_clamp": self.ik.step_clamp,
                "halvings": self.ik.halvings, "seed": self.ik.seed,
            },
            "board": {
                "width": self.board.width, "height": self.board.height,
                "cell_width": self.board.cell_width, "cell_height": self.board.cell_height,
                "pose": {
                    "translation": self.board.board_pose.translation.tolist(),
                    "rotation": self.board.board_pose.rotation.reshape(-1).tolist(),
                },
            },
            "camera": {
                "fx": self.camera.fx, "fy": self.camera.fy,
                "cx": self.camera.cx, "cy": self.camera.cy,
                "skew": self.camera.skew,
                "head_joints": list(self.camera.head_joints),
            },
            "planner": {
                "inner_radius": self.planner.inner_radius,
                "approach_offset": self.planner.approach_offset,
                "handover_forward": self.planner.handover_forward,
                "handover_height": self.planner.handover_height,
                "steps_per_move": self.planner.steps_per_move,
                "token_source": list(self.planner.token_source),
            },
            "service": {"journal_path": self.service.journal_path},
        }

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "RobotConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration root must be a mapping")
        data = dict(data)
        data.pop("schema_version", None)
        parts = _take(data, "top-level", arm=None, body=None, motor=None, ik=None,
                      board=None, camera=None, planner=None, service=None)
        return RobotConfig(
            arm=_build_arm(parts["arm"]),
            body=_build_body(parts["body"]),
            motor=_build_motor(parts["motor"]),
            ik=_build_ik(parts["ik"]),
            board=_build_board(parts["board"]),
            camera=_build_camera(parts["camera"]),
            planner=_build_planner(parts["planner"]),
            service=_build_service(parts["service"]),
        )

    @staticmethod
    def from_yaml(text: str) -> "RobotConfig":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML: {e}")
        return RobotConfig.from_dict(data or {})

    @staticmethod
    def from_file(path) -> "RobotConfig":
        return RobotConfig.from_yaml(Path(path).read_text())


def _default_board() -> BoardGeometry:
    return BoardGeometry(board_pose=RigidTransform(
        np.eye(3), np.array(DEFAULT_BOARD_TRANSLATION)))


def _build_arm(section) -> ArmSpec:
    if section is None:
        return ArmSpec()
    base = ArmSpec()
    fields = _take(dict(section), "arm",
                   L0=base.L0, L1=base.L1, L2=base.L2, l_eff=base.l_eff,
                   m=base.m, m_p=base.m_p, sheet=None, joint_limits=None)
    sheet = SheetSpec() if fields["sheet"] is None else SheetSpec(
        **_take(dict(fields["sheet"]), "arm.sheet",
                density=SheetSpec().density, thickness=SheetSpec().thickness,
                breadth=SheetSpec().breadth))
    kwargs = dict(L0=fields["L0"], L1=fields["L1"], L2=fields["L2"],
                  l_eff=fields["l_eff"], m=fields["m"], m_p=fields["m_p"], sheet=sheet)
    if fields["joint_limits"] is not None:
        kwargs["joint_limits"] = tuple(tuple(pair) for pair in fields["joint_limits"])
    return ArmSpec(**kwargs)


def _build_body(section) -> BodyGeometry:
    if section is None:
        return BodyGeometry()
    base = BodyGeometry()
    fields = _take(dict(section), "body",
                   neck_length=base.neck_length, shoulder_spacing=base.shoulder_spacing,
                   L_H0=base.L_H0, L_H1=base.L_H1)
    return BodyGeometry(**fields)


def _build_motor(section) -> MotorSpec:
    if section is None:
        return MotorSpec()
    base = MotorSpec()
    fields = _take(dict(section), "motor",
                   stall_torque=base.stall_torque, efficiency=base.efficiency,
                   safety_factor=base.safety_factor,
                   shoulder_motor_count=base.shoulder_motor_count)
    return MotorSpec(**fields)


def _build_ik(section) -> IKParams:
    if section is None:
        return IKParams()
    base = IKParams()
    fields = _take(dict(section), "ik",
                   gamma=base.gamma, tol=base.tol, max_iter=base.max_iter,
                   damping=base.damping, restarts=base.restarts,
                   step_clamp=base.step_clamp, halvings=base.halvings, seed=base.seed)
    return IKParams(**fields)


def _build_board(section) -> BoardGeometry:
    if section is None:
        return _default_board()
    base = BoardGeometry()
    fields = _take(dict(section), "board",
                   width=base.width, height=base.height,
                   cell_width=base.cell_width, cell_height=base.cell_height, pose=None)
    if fields["pose"] is None:
        pose = RigidTransform(np.eye(3), np.array(DEFAULT_BOARD_TRANSLATION))
    else:
        p = _take(dict(fields["pose"]), "board.pose",
                  translation=(0.0, 0.0, 0.0),
                  rotation=(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0))
        pose = RigidTransform(np.array(p["rotation"], dtype=float).reshape(3, 3),
                              np.array(p["translation"], dtype=float))
    return BoardGeometry(fields["width"], fields["height"],
                         fields["cell_width"], fields["cell_height"], pose)


def _build_camera(section) -> CameraConfig:
    if section is None:
        return CameraConfig()
    base = CameraConfig()
    fields = _take(dict(section), "camera",
                   fx=base.fx, fy=base.fy, cx=base.cx, cy=base.cy, skew=base.skew,
                   head_joints=list(base.head_joints))
    fields["head_joints"] = tuple(fields["head_joints"])
    return CameraConfig(**fields)


def _build_planner(section) -> PlannerConfig:
    if section is None:
        return PlannerConfig()
    base = PlannerConfig()
    fields = _take(dict(section), "planner",
                   inner_radius=base.inner_radius, approach_offset=base.approach_offset,
                   handover_forward=base.handover_forward,
                   handover_height=base.handover_height,
                   steps_per_move=base.steps_per_move,
                   token_source=list(base.token_source))
    fields["token_source"] = tuple(fields["token_source"])
    return PlannerConfig(**fields)


def _build_service(section) -> ServiceConfig:
    if section is None:
        return ServiceConfig()
    fields = _take(dict(section), "service", journal_path=None)
    return ServiceConfig(**fields)
