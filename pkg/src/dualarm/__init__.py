"""Dual-arm 6-DOF manipulator toolkit.

Core modules: transforms (rigid-transform algebra), chain (forward
kinematics), ik (two-stage inverse kinematics), design (shoulder torque
sizing), perception (depth-camera localization), planner (workspace-aware
pick-place and the game engine). The service subpackage wraps everything
in a JSON/HTTP API and the CLI is a thin client over it.
"""

from .chain import (
    ArmSpec,
    BodyGeometry,
    JointVector,
    Pose,
    SheetSpec,
    arm_fk,
    head_fk,
    position_closed_form,
    shoulder_frames,
)
from .config import RobotConfig
from .design import (
    MotorSpec,
    SweepTable,
    TorqueReport,
    link_mass,
    select_lengths,
    shoulder_torques_collapsed,
    shoulder_torques_general,
    sweep_link_lengths,
    worst_case_limits,
)
from .errors import DomainError
from .ik import IKParams, IKResult, position_jacobian, pseudo_inverse, solve_full, solve_position, solve_wrist
from .perception import (
    CameraModel,
    DepthImage,
    Detection,
    back_project,
    localize_detections,
    project,
    strip_dimensions,
)
from .planner import (
    BoardGeometry,
    BoardState,
    Plan,
    WorkspaceModel,
    best_move,
    board_from_detections,
    cell_to_world,
    handover_point,
    in_workspace,
    plan_pick_place,
    step_game,
)
from .transforms import DHRow, RigidTransform, apply, compose, dh_row_to_transform, invert

__version__ = "0.1.0"
