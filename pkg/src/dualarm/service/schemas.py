"""Wire schemas for the JSON service.

Field names are snake_case mirrors of the domain types; every response
carries schema_version. Angles cross the boundary in radians unless the
request opts into degrees via units="deg".
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1

Units = Literal["rad", "deg"]


class PoseBody(BaseModel):
    translation: List[float] = Field(min_length=3, max_length=3)
    rotation: List[float] = Field(min_length=9, max_length=9)


class FKRequest(BaseModel):
    arm: Literal["left", "right", "head"]
    joints: List[float]
    units: Units = "rad"


class FKResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    arm: str
    pose: PoseBody
    origins_neck: List[List[float]]


class IKRequest(BaseModel):
    position: Optional[List[float]] = Field(default=None, min_length=3, max_length=3)
    pose: Optional[PoseBody] = None
    init: Optional[List[float]] = Field(default=None, min_length=3, max_length=3)
    units: Units = "rad"


class IKResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    converged: bool
    joints: List[float]
    iterations: int
    residual: float
    trace: List[float]
    singular_wrist: bool = False
    message: str = ""
    units: Units = "rad"


class SweepRowBody(BaseModel):
    L1: float
    L2: float
    T1: float
    T2: float
    feasible: bool


class SweepResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    rows: List[SweepRowBody]
    limits: Dict[str, float]
    feasible_interval: Optional[List[float]]
    note: str


class PlanRequest(BaseModel):
    object: List[float] = Field(min_length=3, max_length=3)
    goal: List[float] = Field(min_length=3, max_length=3)


class ActionBody(BaseModel):
    kind: Literal["move", "grip", "release"]
    arm: Literal["left", "right"]
    tag: Optional[str] = None
    pose: Optional[PoseBody] = None
    joints: Optional[List[float]] = None


class PlanResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    handover: bool
    actions: List[ActionBody]
    core_action_count: int


class SkeletonRequest(BaseModel):
    joints_left: List[float]
    joints_right: List[float]
    joints_head: List[float] = Field(default_factory=lambda: [0.0, 0.0])


class SkeletonResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    origins: Dict[str, List[List[float]]]


class GameNewResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    session: str
    board: str
    side_to_move: str
    status: str


class GameMoveRequest(BaseModel):
    session: str
    cell: int = Field(ge=0, le=8)


class GameMoveResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    session: str
    board: str
    side_to_move: str
    status: str
    reply_cell: Optional[int] = None
    plan: Optional[PlanResponse] = None


class EventFrame(BaseModel):
    session: str
    step: int
    action_index: int
    joints_left: List[float]
    joints_right: List[float]
    origins: Optional[Dict[str, List[List[float]]]] = None


class ErrorBody(BaseModel):
    error: str
    message: str
