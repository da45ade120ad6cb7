"""Service core: every endpoint's logic as plain synchronous methods.

The FastAPI app and the in-process CLI client both call into this class,
so the wire behavior is identical whether or not an HTTP server is in the
middle. All methods are pure functions of (config, request, session state).
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..chain import JointVector, Pose, arm_frames, head_frames
from ..config import RobotConfig
from ..errors import InvalidParameterError
from ..ik import solve_full, solve_position
from ..design import sweep_link_lengths
from ..planner.pickplace import Plan, plan_pick_place, playback_frames
from ..planner.tictactoe import O, X, best_move, cell_to_world
from ..transforms import RigidTransform
from .schemas import (
    ActionBody,
    EventFrame,
    FKRequest,
    FKResponse,
    GameMoveRequest,
    GameMoveResponse,
    GameNewResponse,
    IKRequest,
    IKResponse,
    PlanRequest,
    PlanResponse,
    PoseBody,
    SkeletonRequest,
    SkeletonResponse,
    SweepResponse,
    SweepRowBody,
)
from .sessions import SessionStore


def _pose_body(pose: Pose) -> PoseBody:
    return PoseBody(
        translation=[float(x) for x in pose.position],
        rotation=[float(x) for x in pose.rotation.reshape(-1)],
    )


def _pose_from_body(body: PoseBody) -> Pose:
    rotation = np.array(body.rotation, dtype=float).reshape(3, 3)
    return Pose(RigidTransform(rotation, np.array(body.translation, dtype=float)))


def _angles_in(values: Sequence[float], units: str) -> List[float]:
    if units == "deg":
        return [math.radians(v) for v in values]
    return list(values)


def _angles_out(values: Sequence[float], units: str) -> List[float]:
    if units == "deg":
        return [math.degrees(v) for v in values]
    return [float(v) for v in values]


class RobotService:
    def __init__(self, config: Optional[RobotConfig] = None):
        self.config = config or RobotConfig()
        self.workspace = self.config.workspace()
        self.sessions = SessionStore(self.config.service.journal_path)

    # ----- configuration -----

    def get_config(self) -> dict:
        return self.config.to_dict()

    # ----- kinematics -----

    def fk(self, req: FKRequest) -> FKResponse:
        joints = _angles_in(req.joints, req.units)
        if req.arm == "head":
            frames = head_frames(self.config.body, JointVector(tuple(joints), "head"))
            origins = [f.translation.tolist() for f in frames]
        else:
            frames = arm_frames(self.config.arm, JointVector(tuple(joints), "arm"))
            shoulder = self.workspace.shoulder_origin(req.arm)
            origins = [(f.translation + shoulder).tolist() for f in frames]
        return FKResponse(arm=req.arm, pose=_pose_body(Pose(frames[-1])),
                          origins_neck=origins)

    def ik(self, req: IKRequest) -> IKResponse:
        if (req.position is None) == (req.pose is None):
            raise InvalidParameterError("provide exactly one of position or pose")
        init = tuple(_angles_in(req.init, req.units)) if req.init else None
        kwargs = {"init": init} if init else {}
        if req.pose is not None:
            result = solve_full(self.config.arm, _pose_from_body(req.pose),
                                self.config.ik, **kwargs)
        else:
            target = np.array(req.position, dtype=float)
            result = solve_position(self.config.arm, target, params=self.config.ik, **kwargs)
        return IKResponse(
            converged=result.converged,
            joints=_angles_out(result.joints.values, req.units),
            iterations=result.iterations,
            residual=result.residual,
            trace=list(result.trace),
            singular_wrist=result.singular_wrist,
            message=result.message,
            units=req.units,
        )

    def skeleton(self, req: SkeletonRequest) -> SkeletonResponse:
        return SkeletonResponse(origins=self._origins(
            req.joints_left, req.joints_right, req.joints_head))

    def _origins(self, joints_left, joints_right, joints_head) -> Dict[str, List[List[float]]]:
        out: Dict[str, List[List[float]]] = {}
        for side, joints in (("left", joints_left), ("right", joints_right)):
            frames = arm_frames(self.config.arm, JointVector(tuple(joints), "arm"))
            shoulder = self.workspace.shoulder_origin(side)
            out[side] = [(f.translation + shoulder).tolist() for f in frames]
        frames = head_frames(self.config.body, JointVector(tuple(joints_head), "head"))
        out["head"] = [f.translation.tolist() for f in frames]
        return out

    # ----- design -----

    def sweep(self, l1_min: float = 0.0, l1_max: Optional[float] = None,
              step: float = 1.0) -> SweepResponse:
        table = sweep_link_lengths(self.config.arm, self.config.motor,
                                   l1_min, l1_max, step)
        interval = table.largest_feasible_interval()
        return SweepResponse(
            rows=[SweepRowBody(L1=r.L1, L2=r.L2, T1=r.T1, T2=r.T2, feasible=r.feasible)
                  for r in table.rows],
            limits={"T1wc": table.limits[0], "T2wc": table.limits[1]},
            feasible_interval=list(interval) if interval else None,
            note=table.report(),
        )

    # ----- planning -----

    def plan(self, req: PlanRequest) -> PlanResponse:
        plan = self._plan_points(req.object, req.goal)
        return self._plan_body(plan)

    def _plan_points(self, object_pos, goal_pos) -> Plan:
        p = self.config.planner
        return plan_pick_place(
            self.workspace, self.config.arm, object_pos, goal_pos,
            ik_params=self.config.ik, approach_offset=p.approach_offset,
            handover_forward=p.handover_forward, handover_height=p.handover_height)

    def _plan_body(self, plan: Plan) -> PlanResponse:
        actions = []
        for a in plan.actions:
            actions.append(ActionBody(
                kind=a.kind, arm=a.arm, tag=a.tag,
                pose=_pose_body(a.pose) if a.pose else None,
                joints=list(a.joints) if a.joints else None,
            ))
        return PlanResponse(handover=plan.handover, actions=actions,
                            core_action_count=len(plan.core_actions))

    def plan_frames(self, plan: Plan, session_id: str = "") -> List[EventFrame]:
        frames = playback_frames(plan, self.config.planner.steps_per_move)
        head = list(self.config.camera.head_joints)
        out = []
        for f in frames:
            out.append(EventFrame(
                session=session_id, step=f["step"], action_index=f["action_index"],
                joints_left=f["joints_left"], joints_right=f["joints_right"],
                origins=self._origins(f["joints_left"], f["joints_right"], head),
            ))
        return out

    # ----- game -----

    def game_new(self) -> GameNewResponse:
        session = self.sessions.create()
        return GameNewResponse(session=session.session_id,
                               board="".join(session.board.cells),
                               side_to_move=session.board.side_to_move,
                               status=session.board.status())

    def game_move(self, req: GameMoveRequest) -> GameMoveResponse:
        """Apply the human move, compute and apply the robot reply, and plan
        the physical token placement for that reply."""
        session = self.sessions.get(req.session)
        with self.sessions.exclusive(session):
            board = session.apply(req.cell, O)
            self.sessions.record_move(session, req.cell, O)
            reply_cell = None
            plan_body = None
            if not board.is_over():
                reply_cell = best_move(board)
                board = session.apply(reply_cell, X)
                self.sessions.record_move(session, reply_cell, X)
                plan = self._plan_points(self.config.planner.token_source,
                                         cell_to_world(self.config.board, reply_cell))
                session.last_plan = plan
                plan_body = self._plan_body(plan)
            return GameMoveResponse(
                session=session.session_id,
                board="".join(board.cells),
                side_to_move=board.side_to_move,
                status=board.status(),
                reply_cell=reply_cell,
                plan=plan_body,
            )

    def last_plan_frames(self, session_id: str) -> List[EventFrame]:
        session = self.sessions.get(session_id)
        if session.last_plan is None:
            return []
        return self.plan_frames(session.last_plan, session_id)
