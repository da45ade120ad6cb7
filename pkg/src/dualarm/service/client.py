"""Clients the CLI talks through.

LocalClient runs the service core in-process; HttpClient speaks to a
running server. Both return plain dicts shaped exactly like the wire
schemas, so the CLI stays a thin formatter either way.
"""

from __future__ import annotations

from typing import Optional

import httpx

from ..config import RobotConfig
from ..errors import DomainError
from .api import RobotService
from .schemas import (
    FKRequest,
    GameMoveRequest,
    IKRequest,
    PlanRequest,
    PoseBody,
)


class LocalClient:
    def __init__(self, config: Optional[RobotConfig] = None):
        self.service = RobotService(config)

    def get_config(self) -> dict:
        return self.service.get_config()

    def fk(self, arm: str, joints, units: str = "rad") -> dict:
        return self.service.fk(FKRequest(arm=arm, joints=joints, units=units)).model_dump()

    def ik(self, position=None, pose=None, init=None, units: str = "rad") -> dict:
        req = IKRequest(position=position,
                        pose=PoseBody(**pose) if pose else None,
                        init=init, units=units)
        return self.service.ik(req).model_dump()

    def sweep(self, l1_min: float = 0.0, l1_max=None, step: float = 1.0) -> dict:
        return self.service.sweep(l1_min, l1_max, step).model_dump()

    def plan(self, object_pos, goal_pos) -> dict:
        return self.service.plan(PlanRequest(object=list(object_pos),
                                             goal=list(goal_pos))).model_dump()

    def game_new(self) -> dict:
        return self.service.game_new().model_dump()

    def game_move(self, session: str, cell: int) -> dict:
        return self.service.game_move(GameMoveRequest(session=session, cell=cell)).model_dump()


class RemoteError(DomainError):
    """Raised when the server answered with a domain error payload."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class HttpClient:
    def __init__(self, base_url: str, timeout: float = 30.0, transport=None):
        # transport is an httpx transport override (ASGI in tests)
        self._http = httpx.Client(base_url=base_url, timeout=timeout,
                                  transport=transport)

    def _check(self, response: httpx.Response) -> dict:
        body = response.json()
        if response.status_code >= 400:
            raise RemoteError(body.get("error", "http_error"),
                              body.get("message", response.text))
        return body

    def get_config(self) -> dict:
        return self._check(self._http.get("/config"))

    def fk(self, arm: str, joints, units: str = "rad") -> dict:
        return self._check(self._http.post(
            "/fk", json={"arm": arm, "joints": list(joints), "units": units}))

    def ik(self, position=None, pose=None, init=None, units: str = "rad") -> dict:
        body = {"units": units}
        if position is not None:
            body["position"] = list(position)
        if pose is not None:
            body["pose"] = pose
        if init is not None:
            body["init"] = list(init)
        return self._check(self._http.post("/ik", json=body))

    def sweep(self, l1_min: float = 0.0, l1_max=None, step: float = 1.0) -> dict:
        params = {"min": l1_min, "step": step}
        if l1_max is not None:
            params["max"] = l1_max
        return self._check(self._http.get("/design/sweep", params=params))

    def plan(self, object_pos, goal_pos) -> dict:
        return self._check(self._http.post(
            "/plan", json={"object": list(object_pos), "goal": list(goal_pos)}))

    def game_new(self) -> dict:
        return self._check(self._http.post("/game/new"))

    def game_move(self, session: str, cell: int) -> dict:
        return self._check(self._http.post(
            "/game/move", json={"session": session, "cell": cell}))
