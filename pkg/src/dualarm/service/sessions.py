"""In-memory game sessions with an optional append-only journal.

Each session serializes its mutations through a non-blocking lock: a move
arriving while another is being applied is rejected with a turn-order
error rather than queued, so exactly one of two simultaneous moves wins.
The journal holds one JSON document per line and is replayed on startup.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..errors import TurnOrderError, UnknownSessionError
from ..planner.tictactoe import BoardState, step_game


@dataclass
class GameSession:
    session_id: str
    board: BoardState = field(default_factory=BoardState)
    history: List[Tuple[int, str]] = field(default_factory=list)
    last_plan: Optional[object] = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def apply(self, cell: int, token: str) -> BoardState:
        self.board = step_game(self.board, cell, token)
        self.history.append((cell, token))
        return self.board

    def replay(self) -> BoardState:
        board = BoardState()
        for cell, token in self.history:
            board = step_game(board, cell, token)
        return board


class SessionStore:
    def __init__(self, journal_path: Optional[str] = None):
        self._sessions: Dict[str, GameSession] = {}
        self._map_lock = threading.Lock()
        self._journal = Path(journal_path) if journal_path else None
        if self._journal and self._journal.exists():
            self._restore()

    def _restore(self) -> None:
        for line in self._journal.read_text().splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            if event["event"] == "new":
                session = GameSession(event["session"])
                self._sessions[session.session_id] = session
            elif event["event"] == "move":
                self._sessions[event["session"]].apply(event["cell"], event["token"])

    def _log(self, event: dict) -> None:
        if self._journal:
            with self._journal.open("a") as f:
                f.write(json.dumps(event, sort_keys=True) + "\n")

    def create(self) -> GameSession:
        session = GameSession(uuid.uuid4().hex)
        with self._map_lock:
            self._sessions[session.session_id] = session
        self._log({"event": "new", "session": session.session_id})
        return session

    def get(self, session_id: str) -> GameSession:
        with self._map_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"no such session {session_id!r}")
        return session

    def record_move(self, session: GameSession, cell: int, token: str) -> None:
        self._log({"event": "move", "session": session.session_id,
                   "cell": cell, "token": token})

    def exclusive(self, session: GameSession):
        """Non-blocking guard; a second concurrent mutation gets rejected."""
        if not session.lock.acquire(blocking=False):
            raise TurnOrderError("another move is being applied to this session")
        return _Release(session.lock)


class _Release:
    def __init__(self, lock):
        self._lock = lock

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self._lock.release()
