"""FastAPI wiring around the service core.

Domain errors surface as 422 with their stable error code; malformed
bodies surface as 400 with code validation_error. The /events websocket is
the animation channel: clients subscribe to a game session and receive the
playback frames of each robot reply, and can also submit ad-hoc plan
requests over the same socket.
"""

from __future__ import annotations

import asyncio
import contextlib
from typing import Dict, Optional, Set

from fastapi import FastAPI, Query, Request, WebSocket, WebSocketDisconnect
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..config import RobotConfig
from ..errors import DomainError
from .api import RobotService
from .schemas import (
    FKRequest,
    FKResponse,
    GameMoveRequest,
    GameMoveResponse,
    GameNewResponse,
    IKRequest,
    PlanRequest,
    PlanResponse,
    SkeletonRequest,
    SkeletonResponse,
    SweepResponse,
)


class EventHub:
    """Fan-out of playback frames to websocket subscribers per session."""

    def __init__(self):
        self._subs: Dict[str, Set[asyncio.Queue]] = {}
        self._loop: Optional[asyncio.AbstractEventLoop] = None

    def set_loop(self, loop: asyncio.AbstractEventLoop) -> None:
        self._loop = loop

    def subscribe(self, session: str) -> asyncio.Queue:
        q: asyncio.Queue = asyncio.Queue()
        self._subs.setdefault(session, set()).add(q)
        return q

    def unsubscribe(self, session: str, q: asyncio.Queue) -> None:
        self._subs.get(session, set()).discard(q)

    def publish_threadsafe(self, session: str, messages) -> None:
        """Safe to call from worker threads; drops silently with no loop."""
        if self._loop is None:
            return
        queues = list(self._subs.get(session, ()))
        for q in queues:
            for m in messages:
                self._loop.call_soon_threadsafe(q.put_nowait, m)


def create_app(config: Optional[RobotConfig] = None) -> FastAPI:
    service = RobotService(config)
    hub = EventHub()

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        hub.set_loop(asyncio.get_running_loop())
        yield

    app = FastAPI(title="dualarm", lifespan=lifespan)
    app.state.service = service
    app.state.hub = hub

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        return JSONResponse(status_code=422,
                            content={"error": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "validation_error", "message": str(exc)})

    @app.get("/config")
    async def get_config() -> dict:
        return service.get_config()

    @app.post("/fk", response_model=FKResponse)
    async def fk(req: FKRequest) -> FKResponse:
        return service.fk(req)

    @app.post("/ik")
    async def ik(req: IKRequest):
        result = service.ik(req)
        if not result.converged:
            body = {"error": "ik_not_converged", "message": result.message or "no solution"}
            body.update(result.model_dump())
            return JSONResponse(status_code=422, content=body)
        return result

    @app.post("/skeleton", response_model=SkeletonResponse)
    async def skeleton(req: SkeletonRequest) -> SkeletonResponse:
        return service.skeleton(req)

    @app.get("/design/sweep", response_model=SweepResponse)
    async def design_sweep(min: float = Query(0.0), max: Optional[float] = Query(None),
                           step: float = Query(1.0)) -> SweepResponse:
        return service.sweep(min, max, step)

    @app.post("/plan", response_model=PlanResponse)
    async def plan(req: PlanRequest) -> PlanResponse:
        return service.plan(req)

    @app.post("/game/new", response_model=GameNewResponse)
    def game_new() -> GameNewResponse:
        return service.game_new()

    # sync endpoint: runs in the threadpool so two simultaneous moves really
    # race on the per-session guard and exactly one wins
    @app.post("/game/move", response_model=GameMoveResponse)
    def game_move(req: GameMoveRequest) -> GameMoveResponse:
        response = service.game_move(req)
        if response.plan is not None:
            frames = service.last_plan_frames(response.session)
            hub.publish_threadsafe(response.session,
                                   [f.model_dump() for f in frames]
                                   + [{"type": "plan_end", "session": response.session,
                                       "reply_cell": response.reply_cell}])
        return response

    @app.websocket("/events")
    async def events(ws: WebSocket):
        await ws.accept()
        queue: Optional[asyncio.Queue] = None
        session = ""
        forward: Optional[asyncio.Task] = None
        try:
            while True:
                msg = await ws.receive_json()
                kind = msg.get("type")
                if kind == "subscribe":
                    if queue is not None:
                        hub.unsubscribe(session, queue)
                        if forward:
                            forward.cancel()
                    session = str(msg.get("session", ""))
                    service.sessions.get(session)  # validates the id
                    queue = hub.subscribe(session)
                    forward = asyncio.create_task(_forward(ws, queue))
                    await ws.send_json({"type": "subscribed", "session": session})
                elif kind == "plan":
                    req = PlanRequest(object=msg["object"], goal=msg["goal"])
                    task = await asyncio.to_thread(service._plan_points, req.object, req.goal)
                    frames = await asyncio.to_thread(service.plan_frames, task)
                    for f in frames:
                        await ws.send_json(f.model_dump())
                    await ws.send_json({"type": "plan_end", "handover": task.handover})
                elif kind == "ping":
                    await ws.send_json({"type": "pong"})
                else:
                    await ws.send_json({"type": "error", "error": "unknown_message",
                                        "message": f"unsupported type {kind!r}"})
        except WebSocketDisconnect:
            pass
        except DomainError as e:
            with contextlib.suppress(Exception):
                await ws.send_json({"type": "error", "error": e.code, "message": str(e)})
                await ws.close()
        finally:
            if queue is not None:
                hub.unsubscribe(session, queue)
            if forward:
                forward.cancel()

    return app


async def _forward(ws: WebSocket, queue: asyncio.Queue) -> None:
    while True:
        msg = await queue.get()
        await ws.send_json(msg)
