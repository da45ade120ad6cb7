"""Workspace reasoning, bimanual pick-place planning and the game engine."""

from .pickplace import (
    Action,
    Plan,
    WorkspaceModel,
    grasp_pose,
    handover_point,
    in_workspace,
    plan_pick_place,
    plan_to_text,
    playback_frames,
)
from .tictactoe import (
    EMPTY,
    BoardGeometry,
    BoardState,
    best_move,
    board_from_detections,
    cell_to_world,
    step_game,
)

__all__ = [
    "Action",
    "Plan",
    "WorkspaceModel",
    "grasp_pose",
    "handover_point",
    "in_workspace",
    "plan_pick_place",
    "plan_to_text",
    "playback_frames",
    "EMPTY",
    "BoardGeometry",
    "BoardState",
    "best_move",
    "board_from_detections",
    "cell_to_world",
    "step_game",
]
