"""Tic-Tac-Toe engine and the board-to-world mapping.

The robot plays X, the human plays O. Moves are chosen by full-depth
minimax with a lowest-index tie-break among equally valued cells; terminal
scores are depth-weighted so forced wins are taken as early as possible
and forced losses delayed. The engine provably never loses (the acceptance
suite traverses the full game tree).

Board indexing: cells 0..8 row-major, cell 0 at the board-frame origin
corner, columns along the board width (x) and rows along the height (y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    CellConflictError,
    GameOverError,
    IllegalMoveError,
    InconsistentBoardError,
    InvalidParameterError,
    OffBoardError,
    TurnOrderError,
)
from ..transforms import RigidTransform, apply, invert

X = "X"
O = "O"
EMPTY = "."

LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (2, 4, 6),
)


def _winner(cells: Tuple[str, ...]) -> Optional[str]:
    for a, b, c in LINES:
        if cells[a] != EMPTY and cells[a] == cells[b] == cells[c]:
            return cells[a]
    return None


@dataclass(frozen=True)
class BoardState:
    """Immutable 3x3 position plus whose turn it is."""

    cells: Tuple[str, ...] = (EMPTY,) * 9
    side_to_move: str = O  # the human opens by default

    def __post_init__(self):
        cells = tuple(self.cells)
        if len(cells) != 9 or any(c not in (X, O, EMPTY) for c in cells):
            raise InvalidParameterError("board needs nine cells of X, O or .")
        if self.side_to_move not in (X, O):
            raise InvalidParameterError("side_to_move must be X or O")
        nx, no = cells.count(X), cells.count(O)
        if abs(nx - no) > 1:
            raise InconsistentBoardError(f"impossible token counts: {nx} X vs {no} O")
        wins = {t for t in (X, O) if any(
            cells[a] == cells[b] == cells[c] == t for a, b, c in LINES)}
        if len(wins) > 1:
            raise InconsistentBoardError("both sides have completed lines")
        object.__setattr__(self, "cells", cells)

    def winner(self) -> Optional[str]:
        return _winner(self.cells)

    def is_full(self) -> bool:
        return EMPTY not in self.cells

    def is_over(self) -> bool:
        return self.winner() is not None or self.is_full()

    def legal_moves(self) -> List[int]:
        return [i for i, c in enumerate(self.cells) if c == EMPTY]

    def status(self) -> str:
        w = self.winner()
        if w is not None:
            return f"{w}_wins"
        if self.is_full():
            return "draw"
        return "in_progress"

    def render(self) -> str:
        rows = []
        for r in range(3):
            rows.append(" " + " | ".join(self.cells[3 * r + c] for c in range(3)) + " ")
            if r < 2:
                rows.append("---+---+---")
        return "\n".join(rows)


def step_game(board: BoardState, cell: int, token: str) -> BoardState:
    """Place a token, returning the new state with terminal status derivable."""
    if board.is_over():
        raise GameOverError(f"game already finished: {board.status()}")
    if not (isinstance(cell, int) and 0 <= cell <= 8):
        raise InvalidParameterError(f"cell index must be 0..8, got {cell!r}")
    if token != board.side_to_move:
        raise TurnOrderError(f"it is {board.side_to_move}'s turn, not {token}'s")
    if board.cells[cell] != EMPTY:
        raise IllegalMoveError(f"cell {cell} is already occupied")
    cells = list(board.cells)
    cells[cell] = token
    return BoardState(tuple(cells), X if token == O else O)


@lru_cache(maxsize=None)
def _minimax(cells: Tuple[str, ...], mover: str) -> int:
    """Game value from X's perspective; magnitude rewards earlier wins."""
    w = _winner(cells)
    empties = cells.count(EMPTY)
    if w == X:
        return empties + 1
    if w == O:
        return -(empties + 1)
    if empties == 0:
        return 0
    values = []
    nxt = O if mover == X else X
    for i, c in enumerate(cells):
        if c == EMPTY:
            child = cells[:i] + (mover,) + cells[i + 1:]
            values.append(_minimax(child, nxt))
    return max(values) if mover == X else min(values)


def best_move(board: BoardState) -> int:
    """Minimax-optimal cell for the robot (X); lowest index wins ties."""
    if board.is_over():
        raise GameOverError(f"game already finished: {board.status()}")
    if board.side_to_move != X:
        raise TurnOrderError("best_move is only defined with X to move")
    best_cell, best_value = -1, -math.inf
    for cell in board.legal_moves():
        child = board.cells[:cell] + (X,) + board.cells[cell + 1:]
        value = _minimax(child, O)
        if value > best_value:
            best_cell, best_value = cell, value
    return best_cell


@dataclass(frozen=True)
class BoardGeometry:
    """Physical board: outer sheet size, cell size and its pose in the
    neck-base frame (board_pose maps board-local points to neck frame)."""

    width: float = 42.0
    height: float = 29.7
    cell_width: float = 13.0
    cell_height: float = 9.0
    board_pose: RigidTransform = field(default_factory=RigidTransform.identity)

    def __post_init__(self):
        for name in ("width", "height", "cell_width", "cell_height"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"board {name} must be positive")
        if 3 * self.cell_width > self.width or 3 * self.cell_height > self.height:
            raise InvalidParameterError("three cells must fit inside the board")

    @property
    def margin_w(self) -> float:
        return (self.width - 3 * self.cell_width) / 2.0

    @property
    def margin_h(self) -> float:
        return (self.height - 3 * self.cell_height) / 2.0

    def cell_center_local(self, cell: int) -> np.ndarray:
        if not (isinstance(cell, int) and 0 <= cell <= 8):
            raise InvalidParameterError(f"cell index must be 0..8, got {cell!r}")
        col, row = cell % 3, cell // 3
        return np.array([
            self.margin_w + (col + 0.5) * self.cell_width,
            self.margin_h + (row + 0.5) * self.cell_height,
            0.0,
        ])


def cell_to_world(geom: BoardGeometry, cell: int) -> np.ndarray:
    """Neck-frame center of a cell."""
    return apply(geom.board_pose, geom.cell_center_local(cell))


def board_from_detections(geom: BoardGeometry,
                          tokens: Sequence[Tuple[str, Sequence[float]]],
                          side_to_move: Optional[str] = None,
                          plane_tol: float = 2.0) -> BoardState:
    """Snap localized tokens to cells and build the board they describe.

    Token points must lie on the board plane within plane_tol and inside the
    board outline; each lands in its nearest cell center. When side_to_move
    is not given it is inferred under the human-opens convention: X moves
    when O leads the count, otherwise O.
    """
    to_local = invert(geom.board_pose)
    cells = [EMPTY] * 9
    for label, point in tokens:
        token = str(label).strip().upper()
        if token not in (X, O):
            raise InvalidParameterError(f"unknown token label {label!r}")
        local = apply(to_local, np.asarray(point, dtype=float).reshape(3))
        if abs(local[2]) > plane_tol:
            raise OffBoardError(f"token {label!r} is {local[2]:.2f} cm off the board plane")
        if not (0.0 <= local[0] <= geom.width and 0.0 <= local[1] <= geom.height):
            raise OffBoardError(f"token {label!r} lies outside the board outline")
        cell = min(range(9), key=lambda i: float(
            np.linalg.norm(geom.cell_center_local(i)[:2] - local[:2])))
        if cells[cell] != EMPTY:
            raise CellConflictError(f"two tokens landed in cell {cell}")
        cells[cell] = token
    if side_to_move is None:
        side_to_move = X if cells.count(O) > cells.count(X) else O
    return BoardState(tuple(cells), side_to_move)
