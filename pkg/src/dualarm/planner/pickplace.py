"""Workspace membership and bimanual pick-place planning.

Each arm's workspace is modeled as a spherical shell around its shoulder:
outer radius the arm reach, inner radius a small keep-out. When one arm
reaches both task points it does the whole job; otherwise the object is
carried to a handover point on the sagittal plane (y = 0) that both arms
reach, released there, and picked up by the other arm.

Grasp orientation: move targets point the tool axis radially outward from
the acting shoulder, which keeps the wrist center inside the structural
L1 + L2 ball all the way to the reach boundary. Approach and retreat hover
waypoints (a few cm above each grasp) are inserted as pick-place hygiene;
they are tagged so consumers can distinguish them from the core sequence.

Every move target is validated through the full IK solve before a plan is
returned, and the solved joints ride along on the action for playback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..chain import ArmSpec, BodyGeometry, Pose, shoulder_frames
from ..errors import (
    InvalidParameterError,
    NoHandoverRegionError,
    PlanningFailureError,
    UnreachableTaskError,
)
from ..ik import IKParams, solve_full
from ..transforms import RigidTransform

SIDES = ("left", "right")

DEFAULT_INNER_RADIUS = 5.0
DEFAULT_HANDOVER_MARGIN = 5.0
DEFAULT_APPROACH_OFFSET = 5.0


@dataclass(frozen=True)
class WorkspaceModel:
    """Spherical-shell reachability for both arms, in the neck-base frame."""

    left: RigidTransform
    right: RigidTransform
    reach: float
    inner_radius: float = DEFAULT_INNER_RADIUS

    def __post_init__(self):
        if not (0.0 <= self.inner_radius < self.reach):
            raise InvalidParameterError("need 0 <= inner_radius < reach")

    @staticmethod
    def from_specs(geometry: BodyGeometry, spec: ArmSpec,
                   inner_radius: float = DEFAULT_INNER_RADIUS) -> "WorkspaceModel":
        left, right = shoulder_frames(geometry)
        return WorkspaceModel(left, right, spec.reach, inner_radius)

    def shoulder_origin(self, side: str) -> np.ndarray:
        if side == "left":
            return self.left.translation
        if side == "right":
            return self.right.translation
        raise InvalidParameterError(f"unknown side {side!r}")


def in_workspace(ws: WorkspaceModel, side: str, point: Sequence[float]) -> bool:
    """True iff the point lies in the side's shell, boundaries inclusive."""
    p = np.asarray(point, dtype=float).reshape(3)
    d = float(np.linalg.norm(p - ws.shoulder_origin(side)))
    return ws.inner_radius <= d <= ws.reach


def handover_point(ws: WorkspaceModel, forward_offset: float = 20.0,
                   height: Optional[float] = None,
                   margin: float = DEFAULT_HANDOVER_MARGIN) -> np.ndarray:
    """A point on the sagittal plane y = 0 that both arms reach with margin.

    The point sits at the configured forward x offset (shrunk if needed to
    stay inside both shells) and at the shoulder height unless overridden.
    """
    sh_l = ws.shoulder_origin("left")
    sh_r = ws.shoulder_origin("right")
    half = abs(sh_l[1])
    z = sh_l[2] if height is None else float(height)
    usable = ws.reach - margin
    if usable <= 0 or half > usable:
        raise NoHandoverRegionError(
            f"shoulders {2 * half:g} cm apart leave no shared region within reach {ws.reach:g}")
    budget = usable * usable - half * half - (z - sh_l[2]) ** 2
    if budget < 0:
        z = sh_l[2]
        budget = usable * usable - half * half
    x = min(float(forward_offset), math.sqrt(budget))
    point = np.array([x, 0.0, z])
    for side in SIDES:
        if not in_workspace(ws, side, point):
            raise NoHandoverRegionError("no handover point satisfies both workspaces")
    return point


def grasp_pose(ws: WorkspaceModel, side: str, point: Sequence[float]) -> Pose:
    """Neck-frame pose at the point with the tool axis radially outward
    from the acting shoulder; the roll freedom is fixed deterministically."""
    p = np.asarray(point, dtype=float).reshape(3)
    radial = p - ws.shoulder_origin(side)
    norm = float(np.linalg.norm(radial))
    if norm < 1e-9:
        raise InvalidParameterError("grasp point coincides with the shoulder")
    z = radial / norm
    up = np.array([0.0, 0.0, 1.0])
    if abs(float(z @ up)) > 0.999:
        up = np.array([1.0, 0.0, 0.0])
    x = np.cross(up, z)
    x = x / np.linalg.norm(x)
    y = np.cross(z, x)
    return Pose(RigidTransform(np.column_stack([x, y, z]), p))


@dataclass(frozen=True)
class Action:
    """One plan step. Moves carry a neck-frame pose plus the IK joints that
    realize it; approach/retreat hovers are tagged, core steps are not."""

    kind: str  # move | grip | release
    arm: str
    pose: Optional[Pose] = None
    tag: Optional[str] = None  # approach | retreat | None (core)
    joints: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class Plan:
    actions: Tuple[Action, ...]
    handover: bool

    @property
    def core_actions(self) -> Tuple[Action, ...]:
        """The untagged sequence: grasp/transit moves plus grips/releases."""
        return tuple(a for a in self.actions if a.tag is None)


def plan_to_text(plan: Plan) -> str:
    """Line-oriented export: one action per line with position and the
    rotation as 9 row-major numbers."""
    lines = [f"plan handover={str(plan.handover).lower()} actions={len(plan.actions)}"]
    for i, a in enumerate(plan.actions):
        parts = [str(i), a.kind, a.arm, a.tag or "-"]
        if a.pose is not None:
            t = a.pose.position
            r = a.pose.rotation.reshape(-1)
            parts += [f"{x:.6f}" for x in t] + [f"{x:.6f}" for x in r]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


class _Validator:
    """Solves and caches IK for move targets during planning."""

    def __init__(self, ws: WorkspaceModel, spec: ArmSpec, params: Optional[IKParams]):
        self.ws = ws
        self.spec = spec
        self.params = params or IKParams()

    def solve(self, side: str, pose: Pose) -> Optional[Tuple[float, ...]]:
        shoulder = self.ws.shoulder_origin(side)
        local = RigidTransform(pose.rotation, pose.position - shoulder)
        result = solve_full(self.spec, Pose(local), self.params)
        return result.joints.values if result.converged else None


def _move(validator: _Validator, side: str, point: np.ndarray, name: str,
          tag: Optional[str] = None) -> Action:
    pose = grasp_pose(validator.ws, side, point)
    joints = validator.solve(side, pose)
    if joints is None:
        raise PlanningFailureError(f"IK failed for waypoint {name!r} ({side} arm)")
    return Action("move", side, pose, tag, joints)


def _hover(validator: _Validator, side: str, point: np.ndarray,
           offset: float) -> Optional[Tuple[Pose, Tuple[float, ...]]]:
    """Solved hover pose above a grasp point, or None when the hover leaves
    the workspace or has no IK solution (hovers are optional hygiene)."""
    if offset <= 0:
        return None
    above = point + np.array([0.0, 0.0, offset])
    if not in_workspace(validator.ws, side, above):
        return None
    try:
        pose = grasp_pose(validator.ws, side, above)
    except InvalidParameterError:
        return None
    joints = validator.solve(side, pose)
    if joints is None:
        return None
    return pose, joints


def _pick_and_place(validator: _Validator, side: str, grab: np.ndarray,
                    put: np.ndarray, grab_name: str, put_name: str,
                    offset: float) -> List[Action]:
    actions: List[Action] = []
    hover_grab = _hover(validator, side, grab, offset)
    hover_put = _hover(validator, side, put, offset)
    if hover_grab:
        actions.append(Action("move", side, hover_grab[0], "approach", hover_grab[1]))
    actions.append(_move(validator, side, grab, grab_name))
    actions.append(Action("grip", side))
    if hover_grab:
        actions.append(Action("move", side, hover_grab[0], "retreat", hover_grab[1]))
    if hover_put:
        actions.append(Action("move", side, hover_put[0], "approach", hover_put[1]))
    actions.append(_move(validator, side, put, put_name))
    actions.append(Action("release", side))
    if hover_put:
        actions.append(Action("move", side, hover_put[0], "retreat", hover_put[1]))
    return actions


def plan_pick_place(ws: WorkspaceModel, spec: ArmSpec,
                    object_pos: Sequence[float], goal_pos: Sequence[float],
                    ik_params: Optional[IKParams] = None,
                    approach_offset: float = DEFAULT_APPROACH_OFFSET,
                    handover_forward: float = 20.0,
                    handover_height: Optional[float] = None) -> Plan:
    """Plan moving an object to a goal, handing over between arms if needed.

    Single-arm when some arm reaches both points (preferring the arm whose
    shoulder is nearer the object); otherwise the arm reaching the object
    picks, releases at the shared handover point, and the arm reaching the
    goal finishes. Unreachable object or goal raises; an IK failure on a
    required waypoint raises naming that waypoint.
    """
    obj = np.asarray(object_pos, dtype=float).reshape(3)
    goal = np.asarray(goal_pos, dtype=float).reshape(3)
    reach_obj = {s: in_workspace(ws, s, obj) for s in SIDES}
    reach_goal = {s: in_workspace(ws, s, goal) for s in SIDES}
    if not any(reach_obj.values()):
        raise UnreachableTaskError(f"object at {obj.tolist()} is outside both workspaces")
    if not any(reach_goal.values()):
        raise UnreachableTaskError(f"goal at {goal.tolist()} is outside both workspaces")

    validator = _Validator(ws, spec, ik_params)
    both = [s for s in SIDES if reach_obj[s] and reach_goal[s]]
    if both:
        side = min(both, key=lambda s: float(np.linalg.norm(obj - ws.shoulder_origin(s))))
        actions = _pick_and_place(validator, side, obj, goal, "object", "goal",
                                  approach_offset)
        return Plan(tuple(actions), handover=False)

    picker = next(s for s in SIDES if reach_obj[s])
    placer = next(s for s in SIDES if reach_goal[s])
    hand = handover_point(ws, handover_forward, handover_height)
    actions = _pick_and_place(validator, picker, obj, hand, "object", "handover",
                              approach_offset)
    actions += _pick_and_place(validator, placer, hand, goal, "handover", "goal",
                               approach_offset)
    return Plan(tuple(actions), handover=True)


def playback_frames(plan: Plan, steps_per_move: int = 50,
                    start_left: Optional[Sequence[float]] = None,
                    start_right: Optional[Sequence[float]] = None) -> List[Dict]:
    """Linear joint-space interpolation of a plan for animation.

    Each move contributes steps_per_move frames toward its solved joints;
    grips and releases hold for one frame. Both arms' joints appear in every
    frame; the idle arm keeps its last configuration.
    """
    if steps_per_move < 1:
        raise InvalidParameterError("steps_per_move must be >= 1")
    current = {
        "left": np.asarray(start_left if start_left is not None else np.zeros(6), dtype=float),
        "right": np.asarray(start_right if start_right is not None else np.zeros(6), dtype=float),
    }
    frames: List[Dict] = []
    step = 0
    for idx, action in enumerate(plan.actions):
        if action.kind == "move":
            target = np.asarray(action.joints, dtype=float)
            begin = current[action.arm]
            for i in range(1, steps_per_move + 1):
                current[action.arm] = begin + (target - begin) * (i / steps_per_move)
                frames.append({
                    "step": step,
                    "action_index": idx,
                    "joints_left": current["left"].tolist(),
                    "joints_right": current["right"].tolist(),
                })
                step += 1
        else:
            frames.append({
                "step": step,
                "action_index": idx,
                "joints_left": current["left"].tolist(),
                "joints_right": current["right"].tolist(),
            })
            step += 1
    return frames
